//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! non-zero if any fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use quat4d::compose::{compose, compose_gibbs, is_composition_simple, s_condition, GibbsPair};
use quat4d::oracle::planes_from_matrix;
use quat4d::quat::{conj, gibbs_from_unit, mul, rodrigues_compose, unit_from_gibbs};
use quat4d::rotation::{
    from_reflections, invariant_planes, reduce_angle, simple_to_reflections, ReflectionNormal,
    Rotation4, RotationKind,
};
use quat4d::sample::{self, KindRequest};
use quat4d::{Error, Matrix4, Plane, Quaternion as Q, Vec3};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn worked_f() -> Rotation4 {
    Rotation4::new(
        Q::new(1.0, 1.0, 0.0, 0.0) * FRAC_1_SQRT_2,
        Q::new(1.0, 0.0, 1.0, 0.0) * FRAC_1_SQRT_2,
    )
    .unwrap()
}

fn worked_g() -> Rotation4 {
    Rotation4::new(
        Q::new(1.0, 0.0, 1.0, 0.0) * FRAC_1_SQRT_2,
        Q::new(1.0, 0.0, 0.0, 1.0) * FRAC_1_SQRT_2,
    )
    .unwrap()
}

fn span(a: [f64; 4], b: [f64; 4]) -> Plane {
    Plane::span(Q::from_array(a), Q::from_array(b)).unwrap()
}

fn basis() -> [Q; 4] {
    [Q::ONE, Q::I, Q::J, Q::K]
}

fn golden_composition() -> Outcome {
    let h = compose(&worked_g(), &worked_f());
    let ea = Q::new(0.5, 0.5, 0.5, -0.5);
    let eb = Q::new(0.5, 0.5, 0.5, 0.5);
    let same = h.a().max_abs_diff(ea).max(h.b().max_abs_diff(eb));
    let flipped = h.a().max_abs_diff(-ea).max(h.b().max_abs_diff(-eb));
    let err = same.min(flipped);
    outcome(
        err <= 1e-12,
        format!("max component error {err:.2e} (tol 1e-12)"),
    )
}

fn golden_parameters() -> Outcome {
    let gf = GibbsPair::from_rotation(&worked_f()).unwrap();
    let gg = GibbsPair::from_rotation(&worked_g()).unwrap();
    let h = match compose_gibbs(&gf, &gg) {
        Ok(h) => h,
        Err(e) => return outcome(false, format!("compose_gibbs failed: {e}")),
    };
    let cos_err = (h.cos_alpha - 0.5).abs();
    let p_err = h.p_tilde.max_abs_diff(Vec3::new(1.0, 1.0, -1.0));
    let q_err = h.q_tilde.max_abs_diff(Vec3::new(1.0, 1.0, 1.0));
    let angle_err = (h.cos_alpha.acos() - PI / 3.0).abs();
    let worst = cos_err.max(p_err).max(q_err);
    outcome(
        worst <= 1e-12 && angle_err <= 1e-9,
        format!(
            "cos alpha err {cos_err:.2e}, p~ err {p_err:.2e}, q~ err {q_err:.2e}, alpha - pi/3 = {angle_err:.2e}"
        ),
    )
}

fn golden_planes() -> Outcome {
    let mut errs = Vec::new();
    for (r, expected) in [
        (
            worked_f(),
            span([0.0, 1.0, -1.0, 0.0], [1.0, 0.0, 0.0, 1.0]),
        ),
        (
            worked_g(),
            span([0.0, 0.0, 1.0, -1.0], [1.0, 1.0, 0.0, 0.0]),
        ),
    ] {
        match r.classify(1e-8) {
            RotationKind::Simple { fixed_plane, .. } => errs.push(fixed_plane.distance(&expected)),
            other => return outcome(false, format!("expected Simple, got {}", other.name())),
        }
    }
    let worst = errs.iter().cloned().fold(0.0, f64::max);
    outcome(
        worst <= 1e-10,
        format!(
            "projector errors f {:.2e}, g {:.2e} (tol 1e-10)",
            errs[0], errs[1]
        ),
    )
}

fn homomorphism(rng: &mut ChaCha8Rng) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let f = sample::rotation(rng, KindRequest::Any);
        let g = sample::rotation(rng, KindRequest::Any);
        let lhs = compose(&g, &f).to_matrix();
        let rhs = g.to_matrix() * f.to_matrix();
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-12 && secs <= 5.0,
        format!("10000 pairs, max entry diff {worst:.2e} (tol 1e-12), {secs:.3} s (limit 5 s)"),
    )
}

fn determinant_identity(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst: f64 = 0.0;
    // same residual against the opposite sign, reported for diagnosis
    let mut worst_opposite: f64 = 0.0;
    for _ in 0..10_000 {
        let [y, z, u, w] = [0; 4].map(|_| sample::unit_quaternion(rng));
        let (a, b) = (mul(z, conj(y)), mul(conj(y), z));
        let (c, d) = (mul(w, conj(u)), mul(conj(u), w));
        let det = Matrix4::from_column_vectors([y, z, u, w]).det();
        let s = s_condition(a, b, c, d);
        worst = worst.max((s + 2.0 * det).abs());
        worst_opposite = worst_opposite.max((s - 2.0 * det).abs());
    }
    outcome(
        worst <= 1e-9,
        format!(
            "10000 frames, max |residual + 2 det| {worst:.2e} (tol 1e-9); \
             max |residual - 2 det| {worst_opposite:.2e}"
        ),
    )
}

/// Two simple rotations whose fixed planes share the unit vector `v`.
fn intersecting_pair(rng: &mut ChaCha8Rng) -> (Rotation4, Rotation4) {
    let v = sample::unit_quaternion(rng);
    let normal_orthogonal_to_v = |rng: &mut ChaCha8Rng| {
        let x = sample::unit_quaternion(rng);
        let x = (x - v * v.dot4(x)).normalized().unwrap();
        ReflectionNormal::new(x).unwrap()
    };
    let y = normal_orthogonal_to_v(rng);
    let z = normal_orthogonal_to_v(rng);
    let u = normal_orthogonal_to_v(rng);
    let w = normal_orthogonal_to_v(rng);
    (from_reflections(&y, &z), from_reflections(&u, &w))
}

fn corollary_agreement(rng: &mut ChaCha8Rng) -> Outcome {
    let eps = 1e-8;
    let mut disagreements = 0;
    let mut wrong_verdict = 0;
    let mut classify_mismatch = 0;
    let mut errors = 0;
    for expected_simple in [false, true] {
        for _ in 0..1000 {
            let (f, g) = if expected_simple {
                intersecting_pair(rng)
            } else {
                (
                    sample::rotation(rng, KindRequest::Simple),
                    sample::rotation(rng, KindRequest::Simple),
                )
            };
            let report = match is_composition_simple(&f, &g, eps) {
                Ok(r) => r,
                Err(_) => {
                    errors += 1;
                    continue;
                }
            };
            if !report.tests_agree() {
                disagreements += 1;
            }
            if report.is_simple != expected_simple {
                wrong_verdict += 1;
            }
            let kind = compose(&g, &f).classify(eps);
            let classified_simple = kind.is_simple_or_identity();
            let classified_double = matches!(kind, RotationKind::Double { .. });
            if (report.is_simple && !classified_simple) || (!report.is_simple && !classified_double)
            {
                classify_mismatch += 1;
            }
        }
    }
    outcome(
        disagreements == 0 && wrong_verdict == 0 && classify_mismatch == 0 && errors == 0,
        format!(
            "2000 pairs: {disagreements} test disagreements, {wrong_verdict} unexpected verdicts, \
             {classify_mismatch} classify mismatches, {errors} errors"
        ),
    )
}

fn oracle_equivalence(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst_proj: f64 = 0.0;
    let mut worst_angle: f64 = 0.0;
    let mut failures = 0;
    let mut checked = 0;

    let mut check = |alpha: f64, p: Vec3, beta: f64, q: Vec3| {
        checked += 1;
        let r = Rotation4::from_polar(alpha, p, beta, q).unwrap();
        let planes = invariant_planes(p, q);
        let formula = [
            (reduce_angle(alpha + beta), planes.sum_plane()),
            (reduce_angle(alpha - beta), planes.diff_plane()),
        ];
        let oracle = match planes_from_matrix(&r.to_matrix(), 1e-8) {
            Ok(o) if !o.isoclinic => o,
            _ => {
                failures += 1;
                return;
            }
        };
        for (angle, plane) in formula {
            let (o_angle, dist) = oracle.match_plane(&plane);
            worst_proj = worst_proj.max(dist);
            worst_angle = worst_angle.max((angle - o_angle).abs());
        }
        // the classifier must report the same geometry
        if let RotationKind::Double {
            plane1,
            angle1,
            plane2,
            angle2,
        } = r.classify(1e-8)
        {
            worst_proj = worst_proj
                .max(plane1.distance(&formula[0].1))
                .max(plane2.distance(&formula[1].1));
            worst_angle = worst_angle
                .max((angle1 - formula[0].0).abs())
                .max((angle2 - formula[1].0).abs());
        } else {
            failures += 1;
        }
    };

    let margin = 0.05;
    let angles = |rng: &mut ChaCha8Rng| loop {
        let a = rng.gen_range(margin..PI - margin);
        let b = rng.gen_range(margin..PI - margin);
        if (a - b).abs() > margin {
            return (a, b);
        }
    };
    for _ in 0..1000 {
        let (alpha, beta) = angles(rng);
        check(alpha, sample::unit_vec3(rng), beta, sample::unit_vec3(rng));
    }
    for _ in 0..100 {
        let (alpha, beta) = angles(rng);
        let p = sample::unit_vec3(rng);
        check(alpha, p, beta, p);
        let (alpha, beta) = angles(rng);
        let p = sample::unit_vec3(rng);
        check(alpha, p, beta, -p);
    }
    outcome(
        failures == 0 && worst_proj <= 1e-8 && worst_angle <= 1e-9,
        format!(
            "{checked} rotations (incl. 200 with q = ±p): max projector dist {worst_proj:.2e} (tol 1e-8), \
             max angle diff {worst_angle:.2e} (tol 1e-9), {failures} failures"
        ),
    )
}

fn clifford_property(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst_cos: f64 = 0.0;
    let mut worst_plane: f64 = 0.0;
    let mut worst_kind: f64 = 0.0;
    for _ in 0..100 {
        let a = sample::unit_quaternion(rng);
        let r = Rotation4::left_translation(a).unwrap();
        let p = Q::pure(a.v.normalized().unwrap());
        if let RotationKind::LeftIsoclinic { angle } = r.classify(1e-8) {
            worst_kind = worst_kind.max((angle.cos() - a.s).abs());
        } else {
            worst_kind = f64::INFINITY;
        }
        for _ in 0..100 {
            let x = sample::unit_quaternion(rng);
            let ax = mul(a, x);
            worst_cos = worst_cos.max((ax.dot4(x) - a.s).abs());
            let plane = Plane::span(x, mul(p, x)).unwrap();
            worst_plane = worst_plane
                .max(plane.residual(ax))
                .max(plane.residual(mul(a, mul(p, x))));
        }
    }
    outcome(
        worst_cos <= 1e-10 && worst_plane <= 1e-10 && worst_kind <= 1e-10,
        format!(
            "100x100 samples: max |(ax)·x - Sa| {worst_cos:.2e}, Sp{{x, px}} residual {worst_plane:.2e}, \
             classify angle err {worst_kind:.2e} (tol 1e-10)"
        ),
    )
}

fn gibbs_vector(rng: &mut ChaCha8Rng) -> Vec3 {
    Vec3::new(
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
    )
}

fn gibbs_pair(rng: &mut ChaCha8Rng) -> GibbsPair {
    let g = GibbsPair::from_gibbs(gibbs_vector(rng), gibbs_vector(rng));
    if rng.gen_bool(0.5) {
        g.negated()
    } else {
        g
    }
}

fn gibbs_rules(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    let mut n = 0;
    while n < 1000 {
        let f = gibbs_pair(rng);
        let g = gibbs_pair(rng);
        if (1.0 - g.p_tilde.dot(f.p_tilde)).abs() <= 0.1
            || (1.0 - f.q_tilde.dot(g.q_tilde)).abs() <= 0.1
        {
            continue;
        }
        n += 1;
        let oracle = GibbsPair::from_factors(
            mul(g.left_factor(), f.left_factor()),
            mul(f.right_factor(), g.right_factor()),
        )
        .unwrap();
        match compose_gibbs(&f, &g) {
            Ok(h) => worst = worst.max(h.max_abs_diff(&oracle)),
            Err(_) => failures += 1,
        }
    }

    let mut singular_ok = 0;
    let mut singular_total = 0;
    for _ in 0..50 {
        let v = gibbs_vector(rng);
        let w = v / v.norm_sq();
        let other = gibbs_vector(rng);
        for (f, g) in [
            (
                GibbsPair::from_gibbs(v, other),
                GibbsPair::from_gibbs(w, other * 0.1),
            ),
            (
                GibbsPair::from_gibbs(other, v),
                GibbsPair::from_gibbs(other * 0.1, w),
            ),
        ] {
            singular_total += 1;
            if matches!(compose_gibbs(&f, &g), Err(Error::GibbsSingular { .. })) {
                singular_ok += 1;
            }
        }
    }
    outcome(
        failures == 0 && worst <= 1e-10 && singular_ok == singular_total,
        format!(
            "1000 pairs: max component diff {worst:.2e} (tol 1e-10), {failures} spurious errors; \
             {singular_ok}/{singular_total} singular cases raised GibbsSingular"
        ),
    )
}

fn rodrigues_check(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    let mut n = 0;
    while n < 1000 {
        let g1 = gibbs_vector(rng);
        let g2 = gibbs_vector(rng);
        if (1.0 - g2.dot(g1)).abs() <= 0.1 {
            continue;
        }
        n += 1;
        let oracle = gibbs_from_unit(mul(unit_from_gibbs(g2), unit_from_gibbs(g1))).unwrap();
        match rodrigues_compose(g1, g2) {
            Ok(c) => worst = worst.max(c.max_abs_diff(oracle)),
            Err(_) => failures += 1,
        }
    }
    outcome(
        failures == 0 && worst <= 1e-10,
        format!("1000 pairs: max component diff {worst:.2e} (tol 1e-10), {failures} errors"),
    )
}

fn reflection_round_trip(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for _ in 0..1000 {
        let r = sample::rotation(rng, KindRequest::Simple);
        match simple_to_reflections(&r, 1e-8) {
            Ok((y, z)) => {
                let back = from_reflections(&y, &z);
                for x in basis() {
                    worst = worst.max(back.apply(x).max_abs_diff(r.apply(x)));
                }
            }
            Err(_) => failures += 1,
        }
    }
    outcome(
        failures == 0 && worst <= 1e-9,
        format!("1000 simple rotations: max basis error {worst:.2e} (tol 1e-9), {failures} errors"),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut rng = sample::rng(20_240_601);
    let criteria: Vec<(&str, Outcome)> = vec![
        ("1 golden composition", golden_composition()),
        ("2 golden Gibbs parameters", golden_parameters()),
        ("3 golden fixed planes", golden_planes()),
        ("4 homomorphism", homomorphism(&mut rng)),
        ("5 determinant identity", determinant_identity(&mut rng)),
        (
            "6 simplicity three-way agreement",
            corollary_agreement(&mut rng),
        ),
        ("7 oracle equivalence", oracle_equivalence(&mut rng)),
        (
            "8 Clifford translation property",
            clifford_property(&mut rng),
        ),
        ("9 Gibbs composition rules", gibbs_rules(&mut rng)),
        ("10 Rodrigues cross-check", rodrigues_check(&mut rng)),
        ("11 reflection round trip", reflection_round_trip(&mut rng)),
    ];
    let mut failed = 0;
    for (name, o) in &criteria {
        println!(
            "[{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.2} s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
