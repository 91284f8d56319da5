//! Seeded random rotations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::quat::{Quaternion, Vec3};
use crate::rotation::{from_reflections, ReflectionNormal, Rotation4, RotationKind};
use crate::tol;

/// Requested class of a random rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum KindRequest {
    Any,
    Simple,
    Double,
    LeftIsoclinic,
    RightIsoclinic,
}

/// The generator used everywhere a seed is accepted.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the unit 3-sphere (normalized 4D Gaussian).
pub fn unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let q = Quaternion::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if let Some(u) = q.normalized() {
            return u;
        }
    }
}

/// Uniform point of the unit 2-sphere.
pub fn unit_vec3<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if let Some(u) = v.normalized() {
            return u;
        }
    }
}

pub fn reflection_normal<R: Rng + ?Sized>(rng: &mut R) -> ReflectionNormal {
    ReflectionNormal::new(unit_quaternion(rng)).expect("sampled quaternions are unit")
}

/// Random rotation of the requested class.
///
/// Simple rotations are products of two random reflections; isoclinic ones
/// have the other factor equal to `1`. Generic pairs are resampled in the
/// (measure-zero) event that they classify as something else.
pub fn rotation<R: Rng + ?Sized>(rng: &mut R, kind: KindRequest) -> Rotation4 {
    let pair = |rng: &mut R| {
        Rotation4::new(unit_quaternion(rng), unit_quaternion(rng))
            .expect("sampled factors are unit")
    };
    match kind {
        KindRequest::Any => pair(rng),
        KindRequest::Double => loop {
            let r = pair(rng);
            if matches!(r.classify(tol::DEFAULT_EPS), RotationKind::Double { .. }) {
                return r;
            }
        },
        KindRequest::Simple => loop {
            let r = from_reflections(&reflection_normal(rng), &reflection_normal(rng));
            if matches!(r.classify(tol::DEFAULT_EPS), RotationKind::Simple { .. }) {
                return r;
            }
        },
        KindRequest::LeftIsoclinic => {
            let mut a = unit_quaternion(rng);
            // keep b = +1 under the canonical sign
            if a.s < 0.0 {
                a = -a;
            }
            Rotation4::left_translation(a).expect("sampled factor is unit")
        }
        KindRequest::RightIsoclinic => {
            Rotation4::right_translation(unit_quaternion(rng)).expect("sampled factor is unit")
        }
    }
}
