//! End-to-end acceptance suite.  Each test covers one numbered criterion and
//! prints a single pass/fail line with the measured quantity.

use hopfcurv::curvature::{
    berger_sectional, component_table, sectional_reduced, BasisVector,
    BergerParam, BergerPlane, MetricParams, ReducedPlane,
};
use hopfcurv::optimizer::{
    certify_positive, extremize, reduction_check, second_slot_check, OptimizerConfig, Sense,
    SearchSpace,
};
use hopfcurv::oracle::{Oracle, OracleMetric};
use hopfcurv::pinching;
use hopfcurv::positivity::{
    classify, invariants, quad_roots, slice_curve, surface_gap, zero_planes, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(criterion: usize, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion:2}: {tag} - {detail}");
    assert!(pass, "criterion {criterion}: {detail}");
}

fn cfg(restarts: usize, seed: u64) -> OptimizerConfig {
    OptimizerConfig { restarts, seed, max_iters: 4000, ftol: 1e-13 }
}

fn rand_coords(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn random_positive_metric(rng: &mut ChaCha8Rng) -> MetricParams {
    loop {
        let p = MetricParams::new(
            rng.gen_range(0.05..1.35),
            rng.gen_range(0.05..1.35),
            rng.gen_range(0.05..1.35),
        )
        .unwrap();
        if matches!(classify(&p).unwrap(), Verdict::PositiveCurvature) {
            return p;
        }
    }
}

#[test]
fn criterion_01_round_metric_constancy() {
    let mut worst = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    // closed forms
    let round = MetricParams::new(1.0, 1.0, 1.0).unwrap();
    let bp7 = BergerParam::new(1.0, 7).unwrap();
    for _ in 0..200 {
        let p = ReducedPlane {
            a: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)),
            b: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)),
        };
        worst = worst.max((sectional_reduced(&round, &p).unwrap() - 1.0).abs());
        let p = BergerPlane {
            a: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)),
            b: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)),
        };
        worst = worst.max((berger_sectional(&bp7, &p).unwrap() - 1.0).abs());
    }
    // oracle
    for metric in [OracleMetric::Sp { n: 2, t: [1.0; 3] }, OracleMetric::Spin { t: 1.0 }] {
        let o = Oracle::new(metric).unwrap();
        for _ in 0..200 {
            let x = rand_coords(&mut rng, o.dim());
            let y = rand_coords(&mut rng, o.dim());
            worst = worst.max((o.sectional_coords(&x, &y).unwrap() - 1.0).abs());
        }
    }
    report(1, worst <= 1e-9, &format!("round metrics, worst |sec - 1| = {worst:.3e}"));
}

fn label_coords(o: &Oracle, t: &[f64; 3], v: BasisVector) -> Vec<f64> {
    let mut c = vec![0.0; o.dim()];
    match v {
        BasisVector::X(i) => c[i - 1] = t[i - 1].sqrt(),
        BasisVector::U { r, s } => c[3 + (s - 1) * 4 + (r - 1)] = 1.0,
    }
    c
}

#[test]
fn criterion_02_component_table_vs_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut worst = 0.0f64;
    let mut entries = 0usize;
    for _ in 0..20 {
        let t = [rng.gen_range(0.1..1.3), rng.gen_range(0.1..1.3), rng.gen_range(0.1..1.3)];
        let params = MetricParams::new(t[0], t[1], t[2]).unwrap();
        let o = Oracle::new(OracleMetric::Sp { n: 3, t }).unwrap();
        for e in component_table(&params, 3) {
            let c: Vec<Vec<f64>> =
                e.vectors.iter().map(|v| label_coords(&o, &t, *v)).collect();
            worst = worst.max((o.r4_coords(&c[0], &c[1], &c[2], &c[3]) - e.value).abs());
            entries += 1;
        }
    }
    report(
        2,
        worst <= 1e-9,
        &format!("{entries} table entries over 20 triples, worst error {worst:.3e}"),
    );
}

#[test]
fn criterion_03_one_parameter_positivity_range() {
    let mut ok = true;
    let mut detail = String::new();
    for fiber in [3u8, 7] {
        for k in 1..=28 {
            let t = 0.05 * k as f64;
            let (metric, space) = if fiber == 3 {
                (OracleMetric::Sp { n: 2, t: [t; 3] }, SearchSpace::ReducedBerger3)
            } else {
                (OracleMetric::Spin { t }, SearchSpace::ReducedBerger7)
            };
            let min = extremize(&metric, space, Sense::Min, &cfg(12, 103)).unwrap().value;
            if (min > 0.0) != (t < 4.0 / 3.0) {
                ok = false;
                detail = format!("fiber {fiber}, t = {t}: min sec {min:.3e}");
            }
        }
    }
    if ok {
        detail = "optimizer min sec > 0 iff t < 4/3, t in 0.05..1.40, both fibers".into();
    }
    report(3, ok, &detail);
}

#[test]
fn criterion_04_pinching_formulas() {
    // optimizer vs closed form on 30 grid points
    let mut worst = 0.0f64;
    for k in 1..=30 {
        let t = (4.0 / 3.0) * k as f64 / 31.0;
        let metric = OracleMetric::Sp { n: 2, t: [t; 3] };
        let min = extremize(&metric, SearchSpace::ReducedBerger3, Sense::Min, &cfg(12, 104))
            .unwrap()
            .value;
        let max = extremize(&metric, SearchSpace::ReducedBerger3, Sense::Max, &cfg(12, 104))
            .unwrap()
            .value;
        worst = worst.max((min / max - pinching::pinching_delta(t).unwrap()).abs());
    }
    let exact = pinching::pinching_delta(0.2).unwrap();
    // natural-plane difference over [4/5, 4/3]
    let mut max_diff = 0.0f64;
    for k in 0..=4000 {
        let t = 0.8 + (4.0 / 3.0 - 0.8 - 1e-9) * k as f64 / 4000.0;
        max_diff = max_diff
            .max(pinching::natural_delta(t).unwrap() - pinching::pinching_delta(t).unwrap());
    }
    let pass = worst <= 1e-4 && exact == 0.04 && max_diff < 0.008 && max_diff > 0.002;
    report(
        4,
        pass,
        &format!(
            "optimizer delta worst diff {worst:.3e}, delta(0.2) = {exact}, \
             natural-plane diff max {max_diff:.6}"
        ),
    );
}

#[test]
fn criterion_05_soundness_and_completeness() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut worst_min = f64::INFINITY;
    let mut sound = true;
    for _ in 0..50 {
        let p = random_positive_metric(&mut rng);
        let cert = certify_positive(&p, 100_000, rng.gen());
        worst_min = worst_min.min(cert.min_found);
        sound &= cert.positive;
    }
    // completeness on the documented mixed-curvature point
    let bad = MetricParams::new(0.25, 0.25, 0.33).unwrap();
    let cert = certify_positive(&bad, 100_000, 105);
    let complete = !cert.positive && cert.min_found < 0.0;
    // the quoted plane is negative through the closed form and matches the oracle
    let plane = ReducedPlane {
        a: [4.0, 0.0, 0.0, 0.7],
        b: [0.0, 4.0, 0.0, 0.0, 0.0, 0.0, 0.7, 0.0],
    };
    let closed = sectional_reduced(&bad, &plane).unwrap();
    let o = Oracle::new(OracleMetric::Sp { n: 3, t: bad.as_array() }).unwrap();
    let (x, y) = o.embed_reduced_coords(&plane).unwrap();
    let oracle = o.sectional_coords(&x, &y).unwrap();
    let plane_ok = closed < 0.0 && (closed - oracle).abs() <= 1e-9;
    report(
        5,
        sound && complete && plane_ok,
        &format!(
            "50 positive metrics certified (worst min {worst_min:.4}); mixed point min \
             {:.4}; quoted plane sec = {closed:.6} (oracle agrees to {:.1e})",
            cert.min_found,
            (closed - oracle).abs()
        ),
    );
}

/// Minimal exact fraction arithmetic for the boundary identity.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Frac(i64, i64);

impl Frac {
    fn norm(self) -> Frac {
        fn gcd(a: i64, b: i64) -> i64 {
            if b == 0 { a.abs() } else { gcd(b, a % b) }
        }
        let g = gcd(self.0, self.1).max(1);
        let s = if self.1 < 0 { -1 } else { 1 };
        Frac(s * self.0 / g, s * self.1 / g)
    }
    fn add(self, o: Frac) -> Frac {
        Frac(self.0 * o.1 + o.0 * self.1, self.1 * o.1).norm()
    }
    fn sub(self, o: Frac) -> Frac {
        self.add(Frac(-o.0, o.1))
    }
    fn mul(self, o: Frac) -> Frac {
        Frac(self.0 * o.0, self.1 * o.1).norm()
    }
    fn div(self, o: Frac) -> Frac {
        Frac(self.0 * o.1, self.1 * o.0).norm()
    }
    fn sqrt(self) -> Option<Frac> {
        let rn = (self.0 as f64).sqrt().round() as i64;
        let rd = (self.1 as f64).sqrt().round() as i64;
        (rn * rn == self.0 && rd * rd == self.1).then_some(Frac(rn, rd))
    }
}

#[test]
fn criterion_06_boundary_zero_planes() {
    // exact arithmetic at t = (1/4, 1/4, 13/40)
    let (t1, t2, t3) = (Frac(1, 4), Frac(1, 4), Frac(13, 40));
    let six = Frac(6, 1);
    let l3 = six.mul(t1.mul(t2).sub(t1).sub(t2).add(t3));
    let h3 = Frac(4, 1).sub(Frac(3, 1).mul(t3));
    let v3 = t1
        .mul(t1)
        .add(t2.mul(t2))
        .sub(Frac(3, 1).mul(t3).mul(t3))
        .add(Frac(2, 1).mul(t3).mul(t1))
        .add(Frac(2, 1).mul(t3).mul(t2))
        .sub(Frac(2, 1).mul(t1).mul(t2))
        .div(t3);
    let root = h3.mul(v3).sqrt().expect("H3 V3 is a perfect square");
    let rhs = Frac(2, 1).mul(t1.mul(t2).add(root));
    let exact = Frac(-l3.0, l3.1) == rhs && rhs == Frac(27, 40);
    let z_exact = v3.div(h3).sqrt().expect("V3/H3 is a perfect square").div(t1.mul(t2));
    let z_ok = z_exact == Frac(16, 11);

    let p = MetricParams::new(0.25, 0.25, 0.325).unwrap();
    let verdict_ok = match classify(&p).unwrap() {
        Verdict::Boundary { binding_index: 3, z } => (z - 16.0 / 11.0).abs() < 1e-9,
        _ => false,
    };
    let roots = quad_roots(&p, 3).unwrap();
    let root_ok = roots.len() == 2 && (roots[0] - 16.0 / 11.0).abs() < 1e-6;
    let mut worst = 0.0f64;
    for fam in zero_planes(&p).unwrap() {
        for k in 0..32 {
            let theta = k as f64 * std::f64::consts::TAU / 32.0;
            worst = worst.max(sectional_reduced(&p, &fam.plane(theta)).unwrap().abs());
        }
    }
    let metric = OracleMetric::Sp { n: 2, t: p.as_array() };
    let min = extremize(&metric, SearchSpace::ReducedS7 { b8_free: false }, Sense::Min,
        &cfg(24, 106))
    .unwrap()
    .value;
    let min_ok = (-1e-6..=1e-4).contains(&min);
    report(
        6,
        exact && z_ok && verdict_ok && root_ok && worst <= 1e-8 && min_ok,
        &format!(
            "|L_3| = 27/40 exactly, Z = 16/11 exactly; 64 zero-planes worst |sec| \
             {worst:.3e}; optimizer min {min:.3e}"
        ),
    );
}

#[test]
fn criterion_07_e_positivity_on_ordered_grid() {
    let n = 60;
    let mut min_e = f64::INFINITY;
    let mut ok = true;
    for a in 1..=n {
        let t1 = a as f64 * (4.0 / 3.0) / n as f64;
        for b in a..=n {
            let t2 = b as f64 * (4.0 / 3.0) / n as f64;
            for c in 1..=n {
                let t3 = c as f64 * (4.0 / 3.0) / n as f64;
                let e1 = invariants(&MetricParams { t1, t2, t3 }).e(1);
                min_e = min_e.min(e1);
                ok &= e1 > 0.0;
            }
        }
    }
    report(7, ok, &format!("E_1 > 0 on 60^3 ordered grid, min E_1 = {min_e:.3e}"));
}

#[test]
fn criterion_08_surface_gap_map() {
    let n = 200;
    let mut max_gap = 0.0f64;
    for i in 1..=n {
        for j in 1..=n {
            let t1 = (4.0 / 3.0) * i as f64 / n as f64;
            let t2 = (4.0 / 3.0) * j as f64 / n as f64;
            max_gap = max_gap.max(surface_gap(t1, t2).unwrap());
        }
    }
    let mut sep_worst = 0.0f64;
    for k in 0..10 {
        let t1 = 0.1 + 0.06 * k as f64;
        let t2 = (3.0 - 4.0 * t1) / (4.0 - 4.0 * t1);
        sep_worst = sep_worst.max(surface_gap(t1, t2).unwrap());
    }
    let pass = 0.007 < max_gap && max_gap < 0.009 && sep_worst < 1e-3;
    report(
        8,
        pass,
        &format!("200x200 max gap {max_gap:.6}; separating-curve worst gap {sep_worst:.3e}"),
    );
}

#[test]
fn criterion_09_slice_curve() {
    let e0 = slice_curve(1e-7).unwrap();
    let e1 = slice_curve(0.5 - 1e-7).unwrap();
    let endpoints = e0.abs() <= 1e-6 && (e1 - 2.0 / 3.0).abs() <= 1e-6;
    let mut below = true;
    for k in 0..=480 {
        let t1 = 0.01 + 0.48 * k as f64 / 480.0;
        below &= slice_curve(t1).unwrap() < (4.0 / 3.0) * t1;
    }
    let mut boundary = true;
    for k in 1..=20 {
        let t1 = 0.01 + 0.47 * k as f64 / 21.0;
        let t3 = slice_curve(t1).unwrap();
        boundary &= matches!(
            classify(&MetricParams::new(t1, t1, t3).unwrap()).unwrap(),
            Verdict::Boundary { .. }
        );
    }
    report(
        9,
        endpoints && below && boundary,
        &format!(
            "endpoints ({e0:.2e}, {:.2e} from 2/3), curve below the vertical-zero line, \
             Boundary at 20 points",
            (e1 - 2.0 / 3.0).abs()
        ),
    );
}

#[test]
fn criterion_10_full_vs_reduced_minima() {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let t = [rng.gen_range(0.3..1.3), rng.gen_range(0.3..1.3), rng.gen_range(0.3..1.3)];
        let rep = reduction_check(&OracleMetric::Sp { n: 2, t }, &cfg(16, rng.gen())).unwrap();
        worst = worst.max(rep.diff);
    }
    for t in [0.3, 0.6, 0.9, 1.1, 1.25] {
        let rep = reduction_check(&OracleMetric::Spin { t }, &cfg(16, 110)).unwrap();
        worst = worst.max(rep.diff);
    }
    report(
        10,
        worst <= 1e-5,
        &format!("10 sp(2) metrics + 5 one-parameter spin values, worst diff {worst:.3e}"),
    );
}

#[test]
fn criterion_11_second_slot_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let p = random_positive_metric(&mut rng);
        let rep = second_slot_check(&p, &cfg(16, rng.gen())).unwrap();
        worst = worst.max(rep.diff);
    }
    report(11, worst <= 1e-6, &format!("10 metrics, worst minimum difference {worst:.3e}"));
}
