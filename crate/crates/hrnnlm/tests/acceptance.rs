//! End-to-end acceptance suite. Each test prints one PASS/FAIL line (visible
//! with `cargo test --test acceptance -- --nocapture`) and enforces its
//! tolerance and runtime budget.

use std::time::{Duration, Instant};

use hrnnlm::compress::{
    build_dewdney, build_indyk, ceil_sqrt, detect_line, detect_nondecreasing, line_cover,
    nondecreasing_cover, parent_matrix, simulate_net, FourHotCode, NetCode, StateCode, TwoHotCode,
};
use hrnnlm::extract::{extract_dpfsa, DEFAULT_MAX_STATES};
use hrnnlm::hrnn::{sparsemax, Projection};
use hrnnlm::minsky::build_minsky;
use hrnnlm::separate::separate;
use hrnnlm::verify::{brute_equiv, for_each_string, mass_report, Scorer};
use hrnnlm::wfsa::{
    example_fslm, fixtures, gen_random_complete_fsa, gen_random_dpfsa, minsky_example,
    nondet_pfsa, Symbol, Wfsa,
};

struct Criterion {
    n: usize,
    name: &'static str,
    started: Instant,
    budget: Duration,
}

impl Criterion {
    fn start(n: usize, name: &'static str, budget: Duration) -> Self {
        Criterion { n, name, started: Instant::now(), budget }
    }

    fn finish(self, pass: bool, detail: String) {
        let elapsed = self.started.elapsed();
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:2} [{}] {}: {} ({:.2?})",
            self.n, verdict, self.name, detail, elapsed
        );
        assert!(pass, "criterion {} failed: {}", self.n, detail);
        assert!(
            elapsed <= self.budget,
            "criterion {} exceeded its {:?} budget: {:?}",
            self.n,
            self.budget,
            elapsed
        );
    }
}

/// The shared seeded population for criteria 3 and 4: 100 DPFSAs with
/// |Q| <= 6, |Σ| <= 4.
fn dpfsa_population() -> Vec<Wfsa> {
    (0..100u64)
        .map(|seed| gen_random_dpfsa(seed, 1 + (seed % 6) as usize, 1 + (seed % 4) as usize))
        .collect()
}

/// The shared population for criteria 6-9: 20 complete deterministic FSAs
/// with |Q| <= 16, |Σ| <= 3.
fn fsa_population() -> Vec<Wfsa> {
    (0..20u64)
        .map(|seed| {
            gen_random_complete_fsa(seed, 1 + (seed as usize * 5) % 16, 1 + (seed % 3) as usize)
        })
        .collect()
}

fn fsa_trajectory(a: &Wfsa, y: &[Symbol]) -> Vec<usize> {
    let mut q = a.single_initial().unwrap();
    let mut states = vec![q];
    for &s in y {
        q = a.successor(q, s).unwrap().dst;
        states.push(q);
    }
    states
}

#[test]
fn criterion_01_worked_example_exactness() {
    let c = Criterion::start(1, "worked-example exactness", Duration::from_secs(1));
    let a = minsky_example();
    let mut worst: f64 = 0.0;
    for proj in [Projection::SoftmaxExt, Projection::Sparsemax] {
        let lm = build_minsky(&a, proj).unwrap();
        let p = lm.score_string(&[Symbol(1)]).unwrap();
        worst = worst.max((p - 0.45).abs());
    }
    c.finish(worst <= 1e-12, format!("|p(b) - 0.45| <= {worst:.3e}"));
}

#[test]
fn criterion_02_closed_form_family() {
    let c = Criterion::start(2, "closed-form family a b^n a b^m", Duration::from_secs(1));
    let a = example_fslm();
    let lms = [
        build_minsky(&a, Projection::SoftmaxExt).unwrap(),
        build_minsky(&a, Projection::Sparsemax).unwrap(),
    ];
    let (sa, sb) = (Symbol(0), Symbol(1));
    let mut worst: f64 = 0.0;
    for n in 0..=5usize {
        for m in 0..=5usize {
            let mut y = vec![sa];
            y.extend(std::iter::repeat_n(sb, n));
            y.push(sa);
            y.extend(std::iter::repeat_n(sb, m));
            let expect = 0.6 * 0.1f64.powi(n as i32) * 0.9 * 0.7f64.powi(m as i32) * 0.3;
            worst = worst.max((a.stringsum(&y).unwrap() - expect).abs());
            for lm in &lms {
                worst = worst.max((lm.score_string(&y).unwrap() - expect).abs());
            }
        }
    }
    c.finish(worst <= 1e-12, format!("max |p - closed form| = {worst:.3e}"));
}

#[test]
fn criterion_03_weak_equivalence_at_scale() {
    let c = Criterion::start(3, "weak equivalence over 100 DPFSAs", Duration::from_secs(120));
    let mut worst: f64 = 0.0;
    let mut checked = 0usize;
    for a in dpfsa_population() {
        for proj in [Projection::SoftmaxExt, Projection::Sparsemax] {
            let lm = build_minsky(&a, proj).unwrap();
            let report = brute_equiv(&a as &dyn Scorer, &lm as &dyn Scorer, 8, 1e-9).unwrap();
            assert!(report.pass, "projection {proj:?}: diff {}", report.max_abs_diff);
            worst = worst.max(report.max_abs_diff);
            checked += report.n_checked;
        }
    }
    c.finish(
        worst <= 1e-9,
        format!("{checked} strings, max |stringsum - score| = {worst:.3e}"),
    );
}

#[test]
fn criterion_04_round_trip() {
    let c = Criterion::start(4, "automaton -> RNN -> automaton round trip", Duration::from_secs(120));
    let mut worst: f64 = 0.0;
    for a in dpfsa_population() {
        for proj in [Projection::SoftmaxExt, Projection::Sparsemax] {
            let lm = build_minsky(&a, proj).unwrap();
            let back = extract_dpfsa(&lm, DEFAULT_MAX_STATES).unwrap();
            assert!(back.is_deterministic());
            assert!(back.is_probabilistic(1e-9));
            let report = brute_equiv(&a as &dyn Scorer, &back as &dyn Scorer, 8, 1e-9).unwrap();
            assert!(report.pass, "projection {proj:?}: diff {}", report.max_abs_diff);
            worst = worst.max(report.max_abs_diff);
        }
    }
    c.finish(worst <= 1e-9, format!("max |A - extract(compile(A))| = {worst:.3e}"));
}

#[test]
fn criterion_05_nondeterminizable_fixture() {
    let c = Criterion::start(5, "non-determinizable fixture closed form", Duration::from_secs(1));
    let a = nondet_pfsa();
    let (sa, sb, sc) = (Symbol(0), Symbol(1), Symbol(2));
    let mut worst: f64 = 0.0;
    for n in 0..=10usize {
        let mut y = vec![sa];
        y.extend(std::iter::repeat_n(sb, n));
        y.push(sc);
        let expect = 0.5 * 0.9f64.powi(n as i32) * 0.1 + 0.5 * 0.1f64.powi(n as i32) * 0.9;
        worst = worst.max((a.stringsum(&y).unwrap() - expect).abs());
    }
    let pass = worst <= 1e-12 && !a.is_deterministic();
    c.finish(pass, format!("max diff {worst:.3e}, deterministic = {}", a.is_deterministic()));
}

#[test]
fn criterion_06_compressed_construction_correctness() {
    let c = Criterion::start(6, "two-hot and four-hot trajectory equivalence", Duration::from_secs(180));
    let mut n_strings = 0usize;
    for (i, a) in fsa_population().iter().enumerate() {
        let nets = [build_dewdney(a).unwrap(), build_indyk(a, i as u64, 8).unwrap()];
        let n = a.alphabet().len();
        for len in 0..=6usize {
            for_each_string(n, len, |y| {
                let want = fsa_trajectory(a, y);
                for net in &nets {
                    assert_eq!(simulate_net(net, y).unwrap(), want, "fsa {i}");
                }
                n_strings += 1;
                Ok(())
            })
            .unwrap();
        }
    }
    c.finish(true, format!("{n_strings} strings, 100% state-trajectory agreement"));
}

#[test]
fn criterion_07_cover_size_lemma() {
    let c = Criterion::start(7, "line covers: size bound and exact reconstruction", Duration::from_secs(60));
    let mut n_covers = 0usize;
    for a in fsa_population() {
        let code = StateCode::TwoHot(TwoHotCode::new(a.n_states()));
        for j in 0..2 {
            for y in a.alphabet().symbols() {
                for k in 0..code.component_range() {
                    let m = parent_matrix(&a, &code, j, k, y).unwrap();
                    let cover = line_cover(&m);
                    assert!(
                        cover.len() <= 2 * ceil_sqrt(m.popcount()),
                        "cover of {} ones took {} lines",
                        m.popcount(),
                        cover.len()
                    );
                    let mut acc = hrnnlm::compress::BinMatrix::zeros(m.dim());
                    for part in &cover {
                        acc.or_assign(part);
                    }
                    assert_eq!(acc, m, "cover does not reconstruct its source");
                    n_covers += 1;
                }
            }
        }
    }
    c.finish(true, format!("{n_covers} covers within 2*ceil(sqrt(ones))"));
}

#[test]
fn criterion_08_detector_exactness() {
    let c = Criterion::start(8, "detector exactness over all pair inputs", Duration::from_secs(60));
    let mut n_detectors = 0usize;
    let mut n_inputs = 0usize;
    for (i, a) in fsa_population().iter().enumerate() {
        // Line detectors from the two-hot build.
        let code = StateCode::TwoHot(TwoHotCode::new(a.n_states()));
        for j in 0..2 {
            for y in a.alphabet().symbols() {
                for k in 0..code.component_range() {
                    let m = parent_matrix(a, &code, j, k, y).unwrap();
                    for part in line_cover(&m) {
                        let det = detect_line(&part).unwrap();
                        for r in 0..part.dim() {
                            for cc in 0..part.dim() {
                                assert_eq!(det.fires(r, cc), part.get(r, cc));
                                n_inputs += 1;
                            }
                        }
                        n_detectors += 1;
                    }
                }
            }
        }
        // Equality-pair detectors from the four-hot build, best permutation
        // replayed via the built net's code.
        let net = build_indyk(a, i as u64, 8).unwrap();
        let NetCode::FourHot(four) = &net.code else { panic!() };
        let code = StateCode::FourHot(FourHotCode::new(a.n_states(), four.perm().to_vec()).unwrap());
        for j in 0..4 {
            for y in a.alphabet().symbols() {
                for k in 0..code.component_range() {
                    let m = parent_matrix(a, &code, j, k, y).unwrap();
                    for part in nondecreasing_cover(&m) {
                        let (ge, le) = detect_nondecreasing(&part).unwrap();
                        for r in 0..part.dim() {
                            for cc in 0..part.dim() {
                                assert_eq!(ge.fires(r, cc) && le.fires(r, cc), part.get(r, cc));
                                n_inputs += 1;
                            }
                        }
                        n_detectors += 1;
                    }
                }
            }
        }
    }
    c.finish(true, format!("{n_detectors} detectors, {n_inputs} pair inputs, zero mismatches"));
}

#[test]
fn criterion_09_separation() {
    let c = Criterion::start(9, "log-alphabet separation", Duration::from_secs(60));
    let mut n_strings = 0usize;
    for a in fsa_population() {
        let sep = separate(&a).unwrap();
        assert!(sep.is_log_separable());
        assert!(sep.n_states() <= a.n_states() * a.alphabet().len() + 1);
        let n = a.alphabet().len();
        for len in 0..=8usize {
            for_each_string(n, len, |y| {
                assert_eq!(a.accepts(y), sep.accepts(y));
                n_strings += 1;
                Ok(())
            })
            .unwrap();
        }
    }
    c.finish(true, format!("{n_strings} membership comparisons agree"));
}

#[test]
fn criterion_10_sparsemax_oracle() {
    let c = Criterion::start(10, "sparsemax vs grid projection oracle", Duration::from_secs(120));
    let mut rng = Rng(0x5eed);
    let obj = |p: &[f64], x: &[f64]| -> f64 {
        p.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum()
    };
    let mut worst_gap: f64 = 0.0;
    for trial in 0..200usize {
        let dim = if trial % 2 == 0 { 2 } else { 3 };
        let x: Vec<f64> = (0..dim).map(|_| rng.unit() * 4.0 - 2.0).collect();
        let p = sparsemax(&x);
        let o = grid_qp_oracle(&x, 1e-4);
        // The exact projection can only do better than any grid point; a
        // positive gap beyond tolerance would mean sparsemax is not the
        // minimizer.
        let gap = obj(p.as_slice(), &x) - obj(&o, &x);
        worst_gap = worst_gap.max(gap);
        assert!(gap <= 1e-6, "objective gap {gap} on {x:?}");
        // And the grid argmin must sit right next to the claimed projection.
        for (a, b) in p.as_slice().iter().zip(&o) {
            assert!((a - b).abs() <= 2e-4, "coordinate drift on {x:?}");
        }
    }
    // Identity on simplex points.
    let mut worst_id: f64 = 0.0;
    for _ in 0..100 {
        let dim = 2 + (rng.next() as usize % 3);
        let mut p: Vec<f64> = (0..dim).map(|_| rng.unit().max(1e-3)).collect();
        let s: f64 = p.iter().sum();
        for v in &mut p {
            *v /= s;
        }
        let q = sparsemax(&p);
        for (a, b) in p.iter().zip(q.as_slice()) {
            worst_id = worst_id.max((a - b).abs());
        }
    }
    let pass = worst_gap <= 1e-6 && worst_id <= 1e-15;
    c.finish(pass, format!("max objective gap {worst_gap:.3e}, identity drift {worst_id:.3e}"));
}

#[test]
fn criterion_11_normalization() {
    let c = Criterion::start(11, "cumulative mass stays within 1", Duration::from_secs(60));
    let mut peak: f64 = 0.0;
    for (name, a) in fixtures() {
        if !a.is_probabilistic(1e-9) {
            continue;
        }
        let report = mass_report(&a as &dyn Scorer, 12).unwrap();
        assert!(report.within_budget(1e-9), "{name} exceeds unit mass");
        peak = peak.max(*report.cumulative.last().unwrap());
    }
    c.finish(peak <= 1.0 + 1e-9, format!("largest cumulative mass {peak:.12}"));
}

// ---------------------------------------------------------------------------
// Test-local helpers
// ---------------------------------------------------------------------------

/// Small deterministic generator, independent of the library's.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 11
    }
    fn unit(&mut self) -> f64 {
        (self.next() % (1 << 53)) as f64 / (1u64 << 53) as f64
    }
}

/// Independent quadratic-program oracle: grid search over the simplex at
/// `fine_step` resolution. Three dimensions use a coarse pass plus a fine
/// window around the coarse argmin; the objective is 1-strongly convex, so
/// the window provably contains the true minimizer.
fn grid_qp_oracle(x: &[f64], fine_step: f64) -> Vec<f64> {
    let obj = |p: &[f64]| -> f64 { p.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum() };
    match x.len() {
        2 => {
            let n = (1.0 / fine_step).round() as usize;
            let mut best = (f64::INFINITY, vec![0.0; 2]);
            for i in 0..=n {
                let p0 = (i as f64 * fine_step).min(1.0);
                let p = vec![p0, 1.0 - p0];
                let d = obj(&p);
                if d < best.0 {
                    best = (d, p);
                }
            }
            best.1
        }
        3 => {
            let scan = |lo0: f64, hi0: f64, lo1: f64, hi1: f64, step: f64| {
                let mut best = (f64::INFINITY, vec![0.0; 3]);
                let n0 = ((hi0 - lo0) / step).round() as usize;
                let n1 = ((hi1 - lo1) / step).round() as usize;
                for i in 0..=n0 {
                    let p0 = lo0 + i as f64 * step;
                    if !(0.0..=1.0).contains(&p0) {
                        continue;
                    }
                    for j in 0..=n1 {
                        let p1 = lo1 + j as f64 * step;
                        if p1 < 0.0 || p0 + p1 > 1.0 {
                            continue;
                        }
                        let p = vec![p0, p1, 1.0 - p0 - p1];
                        let d = obj(&p);
                        if d < best.0 {
                            best = (d, p);
                        }
                    }
                }
                best.1
            };
            let coarse = 1e-2;
            let c = scan(0.0, 1.0, 0.0, 1.0, coarse);
            scan(
                (c[0] - 2.0 * coarse).max(0.0),
                (c[0] + 2.0 * coarse).min(1.0),
                (c[1] - 2.0 * coarse).max(0.0),
                (c[1] + 2.0 * coarse).min(1.0),
                fine_step,
            )
        }
        _ => unreachable!("oracle covers dims 2 and 3"),
    }
}
