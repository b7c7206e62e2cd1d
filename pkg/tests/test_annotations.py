"""Annotation generation: arrows, arcs, triads, label formatting."""

import pytest

from morphplay.annotations import (
    Annotation,
    AnnotationKind,
    ColorHint,
    rotation_annotation,
    translation_annotation,
    triad_annotation,
)
from morphplay.geometry import (
    AngleDeg,
    PrincipalAxis,
    RotationSense,
    RotationSpec,
    Vec3,
    rotate_about_pivot,
)


def rot_spec(axis, sense, angle, pivot=(0, 0, 0)):
    return RotationSpec(axis, sense, AngleDeg(angle), Vec3(*pivot))


class TestTranslationAnnotation:
    def test_pythagorean_magnitude(self):
        arrow, label = translation_annotation(Vec3(0, 0, 0), Vec3(3, 4, 0))
        assert arrow.kind is AnnotationKind.ARROW
        assert arrow.points == (Vec3(0, 0, 0), Vec3(3, 4, 0))
        assert label.kind is AnnotationKind.LABEL
        assert label.text == "5.000"
        assert arrow.text == "5.000"

    def test_zero_vector_suppressed(self):
        assert translation_annotation(Vec3(1, 1, 1), Vec3(0, 0, 0)) == []

    def test_axis_aligned(self):
        arrow, label = translation_annotation(Vec3(0, 0, 0), Vec3(0, 0, 2))
        assert arrow.points[1] == Vec3(0, 0, 2)
        assert label.text == "2.000"


class TestRotationAnnotation:
    def test_zero_angle_triad_only(self):
        out = rotation_annotation(rot_spec(PrincipalAxis.Z, RotationSense.CCW, 0.0), 1.0)
        assert [a.kind for a in out] == [AnnotationKind.TRIAD]

    def test_quarter_turn_ccw(self):
        out = rotation_annotation(rot_spec(PrincipalAxis.Z, RotationSense.CCW, 90.0), 1.0)
        triad, arc, label = out
        assert triad.kind is AnnotationKind.TRIAD
        assert len(arc.points) == 19
        assert (arc.points[0] - Vec3(1, 0, 0)).norm() < 1e-12
        assert (arc.points[-1] - Vec3(0, 1, 0)).norm() < 1e-12
        assert label.text == "+90.0°"

    def test_quarter_turn_cw(self):
        _, arc, label = rotation_annotation(rot_spec(PrincipalAxis.Z, RotationSense.CW, 90.0), 1.0)
        assert (arc.points[-1] - Vec3(0, -1, 0)).norm() < 1e-12
        assert label.text == "-90.0°"

    def test_non_positive_radius_rejected(self):
        with pytest.raises(ValueError):
            rotation_annotation(rot_spec(PrincipalAxis.Z, RotationSense.CCW, 10.0), 0.0)

    @pytest.mark.parametrize("axis", list(PrincipalAxis))
    @pytest.mark.parametrize("angle,sense", [(137.0, RotationSense.CCW), (61.0, RotationSense.CW)])
    def test_arc_samples_on_circle_in_plane(self, axis, angle, sense):
        pivot = Vec3(1.5, -2.0, 0.25)
        radius = 2.0
        out = rotation_annotation(RotationSpec(axis, sense, AngleDeg(angle), pivot), radius)
        arc = out[1]
        # sampling never exceeds a 5-degree step
        assert len(arc.points) - 1 >= angle / 5.0
        for p in arc.points:
            r = p - pivot
            assert abs(r.norm() - radius) < 1e-9
            assert abs(r.dot(axis.direction)) < 1e-9

    @pytest.mark.parametrize("axis", list(PrincipalAxis))
    def test_arc_endpoint_consistent_with_rotation(self, axis):
        # endpoint equals the geometry-core rotation of the start point
        spec = RotationSpec(axis, RotationSense.CCW, AngleDeg(117.0), Vec3(0.5, 1.0, -1.0))
        arc = rotation_annotation(spec, 1.25)[1]
        [expected] = rotate_about_pivot([arc.points[0]], spec)
        assert (arc.points[-1] - expected).norm() < 1e-9

    def test_triad_colored_by_rotation_axis(self):
        out = rotation_annotation(rot_spec(PrincipalAxis.Y, RotationSense.CCW, 30.0), 1.0)
        assert out[0].color_hint is ColorHint.AXIS_Y

    def test_deterministic(self):
        spec = rot_spec(PrincipalAxis.X, RotationSense.CW, 73.0, (0.1, 0.2, 0.3))
        assert rotation_annotation(spec, 1.0) == rotation_annotation(spec, 1.0)

    def test_boundary_180_sweeps_differ_by_sign(self):
        # +180 and -180 share a matrix but sweep opposite ways
        pos = rotation_annotation(rot_spec(PrincipalAxis.Z, RotationSense.CCW, 180.0), 1.0)[1]
        neg = rotation_annotation(rot_spec(PrincipalAxis.Z, RotationSense.CCW, -180.0), 1.0)[1]
        assert (pos.points[-1] - neg.points[-1]).norm() < 1e-9  # same endpoint
        quarter = len(pos.points) // 2
        assert (pos.points[quarter] - neg.points[quarter]).norm() > 1.0  # opposite halves


class TestAnnotationInvariants:
    def test_triad_structure(self):
        t = triad_annotation(Vec3(1, 2, 3), 2.0)
        assert len(t.points) == 6
        assert t.points[0] == Vec3(1, 2, 3)
        assert t.points[1] == Vec3(3, 2, 3)

    def test_arrow_point_count_enforced(self):
        with pytest.raises(ValueError):
            Annotation(AnnotationKind.ARROW, (Vec3(0, 0, 0),), Vec3(0, 0, 0))

    def test_label_requires_text(self):
        with pytest.raises(ValueError):
            Annotation(AnnotationKind.LABEL, (Vec3(0, 0, 0),), Vec3(0, 0, 0))
