use rand::Rng;

use quat4d::oracle::{left_mult_matrix, right_mult_matrix, symmetric_eigen4};
use quat4d::quat::polar;
use quat4d::rotation::reduce_angle;
use quat4d::sample::{self, KindRequest};
use quat4d::{invariant_planes, planes_from_matrix, Matrix4, Rotation4, RotationKind};

#[test]
fn left_and_right_matrices_multiply_to_the_rotation() {
    let mut rng = sample::rng(1);
    for _ in 0..200 {
        let r = sample::rotation(&mut rng, KindRequest::Any);
        let (l, rm) = (left_mult_matrix(r.a()), right_mult_matrix(r.b()));
        assert!((l * rm).max_abs_diff(&r.to_matrix()) < 1e-14);
        assert!((l * rm).max_abs_diff(&(rm * l)) < 1e-14);
    }
}

#[test]
fn eigen_decomposition_reconstructs_random_symmetric_matrices() {
    let mut rng = sample::rng(2);
    for _ in 0..500 {
        let mut e = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in i..4 {
                let x: f64 = rng.gen_range(-5.0..5.0);
                e[i][j] = x;
                e[j][i] = x;
            }
        }
        let m = Matrix4::from_rows(e);
        let eig = symmetric_eigen4(&m).unwrap();
        assert!(eig.reconstruct().max_abs_diff(&m) < 1e-11);
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        let v = eig.vectors;
        assert!((v.transpose() * v).max_abs_diff(&Matrix4::IDENTITY) < 1e-12);
    }
}

#[test]
fn closed_form_planes_match_the_matrix() {
    let mut rng = sample::rng(3);
    let mut checked = 0;
    while checked < 1000 {
        let r = sample::rotation(&mut rng, KindRequest::Double);
        let oracle = planes_from_matrix(&r.to_matrix(), 1e-8).unwrap();
        if oracle.isoclinic {
            continue;
        }
        checked += 1;
        let (pa, pb) = (polar(r.a()).unwrap(), polar(r.b()).unwrap());
        let planes = invariant_planes(pa.axis, pb.axis);
        let (sum_angle, d_sum) = oracle.match_plane(&planes.sum_plane());
        let (diff_angle, d_diff) = oracle.match_plane(&planes.diff_plane());
        assert!(d_sum < 1e-8 && d_diff < 1e-8, "{d_sum:e} {d_diff:e}");
        assert!((sum_angle - reduce_angle(pa.half_angle + pb.half_angle)).abs() < 1e-9);
        assert!((diff_angle - reduce_angle(pa.half_angle - pb.half_angle)).abs() < 1e-9);
    }
}

#[test]
fn simple_rotations_have_a_zero_angle() {
    let mut rng = sample::rng(4);
    for _ in 0..200 {
        let r = sample::rotation(&mut rng, KindRequest::Simple);
        let RotationKind::Simple {
            angle,
            fixed_plane,
            rotation_plane,
        } = r.classify(1e-8)
        else {
            panic!("not simple");
        };
        let oracle = planes_from_matrix(&r.to_matrix(), 1e-8).unwrap();
        assert!(oracle.angle1.abs() < 1e-7);
        let (a, d) = oracle.match_plane(&fixed_plane);
        assert!(d < 1e-8 && a.abs() < 1e-7);
        let (a, d) = oracle.match_plane(&rotation_plane);
        assert!(d < 1e-8 && (a - angle).abs() < 1e-9);
    }
}

#[test]
fn isoclinic_rotations_are_flagged() {
    let mut rng = sample::rng(5);
    for kind in [KindRequest::LeftIsoclinic, KindRequest::RightIsoclinic] {
        for _ in 0..100 {
            let r = sample::rotation(&mut rng, kind);
            let oracle = planes_from_matrix(&r.to_matrix(), 1e-8).unwrap();
            assert!(oracle.isoclinic);
            let expected = r.classify(1e-8).angles()[0];
            assert!((oracle.angle1 - expected).abs() < 1e-9);
            for p in [oracle.plane1, oracle.plane2] {
                assert!(p.residual(r.apply(p.u)) < 1e-12 && p.residual(r.apply(p.w)) < 1e-12);
            }
            assert!((oracle.angle2 - expected).abs() < 1e-9);
        }
    }
    let identity = planes_from_matrix(&Rotation4::IDENTITY.to_matrix(), 1e-8).unwrap();
    assert!(identity.isoclinic && identity.angle1 == 0.0 && identity.angle2 == 0.0);
}
