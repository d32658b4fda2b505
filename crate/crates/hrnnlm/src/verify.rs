//! Brute-force verification oracles: weak-equivalence checks between any two
//! scorers, cumulative-mass audits, and exact-rational stringsums.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hrnn::HrnnLm;
use crate::wfsa::{Alphabet, StateId, Symbol, Wfsa};

/// Anything that assigns a probability-like score to strings over a fixed
/// alphabet. Automata score by stringsum, RNN LMs by locally normalized
/// products, threshold-net acceptors by 0/1 membership.
pub trait Scorer {
    fn alphabet(&self) -> &Alphabet;
    fn score(&self, y: &[Symbol]) -> Result<f64>;
}

impl Scorer for Wfsa {
    fn alphabet(&self) -> &Alphabet {
        Wfsa::alphabet(self)
    }
    fn score(&self, y: &[Symbol]) -> Result<f64> {
        self.stringsum(y)
    }
}

impl Scorer for HrnnLm {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn score(&self, y: &[Symbol]) -> Result<f64> {
        self.score_string(y)
    }
}

/// Length-lexicographic enumeration of all strings over `n_symbols` with the
/// given length. Calls `f` on each string; stops early on error.
pub fn for_each_string<F>(n_symbols: usize, len: usize, mut f: F) -> Result<()>
where
    F: FnMut(&[Symbol]) -> Result<()>,
{
    let mut y = vec![Symbol(0); len];
    if n_symbols == 0 {
        if len == 0 {
            f(&y)?;
        }
        return Ok(());
    }
    loop {
        f(&y)?;
        let mut i = 0;
        while i < len {
            if y[i].index() + 1 < n_symbols {
                y[i] = Symbol(y[i].0 + 1);
                break;
            }
            y[i] = Symbol(0);
            i += 1;
        }
        if i == len {
            return Ok(());
        }
    }
}

#[derive(Debug, Clone)]
pub struct EquivReport {
    pub pass: bool,
    pub max_abs_diff: f64,
    /// First string attaining the maximum difference, in enumeration order.
    pub worst_string: Option<Vec<Symbol>>,
    pub n_checked: usize,
    pub max_len: usize,
    pub tol: f64,
}

impl EquivReport {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let worst = match &self.worst_string {
            None => String::new(),
            Some(y) => y
                .iter()
                .map(|&s| alphabet.name(s))
                .collect::<Vec<_>>()
                .join(" "),
        };
        format!(
            "pass {}\nmax_abs_diff {:.16e}\nworst_string {}\nn_checked {}\nmax_len {}\ntol {:.16e}\n",
            self.pass, self.max_abs_diff, worst, self.n_checked, self.max_len, self.tol
        )
    }
}

/// Score every string of length at most `max_len` under both scorers and
/// report the largest absolute difference.
pub fn brute_equiv(
    a: &dyn Scorer,
    b: &dyn Scorer,
    max_len: usize,
    tol: f64,
) -> Result<EquivReport> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let n = a.alphabet().len();
    let mut max_abs_diff = 0.0f64;
    let mut worst: Option<Vec<Symbol>> = None;
    let mut n_checked = 0usize;
    for len in 0..=max_len {
        for_each_string(n, len, |y| {
            let pa = a.score(y)?;
            let pb = b.score(y)?;
            let diff = (pa - pb).abs();
            if diff > max_abs_diff {
                max_abs_diff = diff;
                worst = Some(y.to_vec());
            }
            n_checked += 1;
            Ok(())
        })?;
    }
    Ok(EquivReport {
        pass: max_abs_diff <= tol,
        max_abs_diff,
        worst_string: worst,
        n_checked,
        max_len,
        tol,
    })
}

#[derive(Debug, Clone)]
pub struct MassReport {
    /// Total probability mass per string length, index = length.
    pub per_len: Vec<f64>,
    /// Running sum of `per_len`.
    pub cumulative: Vec<f64>,
}

impl MassReport {
    pub fn within_budget(&self, tol: f64) -> bool {
        self.cumulative.iter().all(|&c| c <= 1.0 + tol)
    }

    pub fn render(&self) -> String {
        let mut out = String::from("len mass cumulative\n");
        for (k, (m, c)) in self.per_len.iter().zip(&self.cumulative).enumerate() {
            out.push_str(&format!("{k} {m:.16e} {c:.16e}\n"));
        }
        out
    }
}

/// Sum of scores per string length, by enumeration.
pub fn mass_report(s: &dyn Scorer, max_len: usize) -> Result<MassReport> {
    let n = s.alphabet().len();
    let mut per_len = Vec::with_capacity(max_len + 1);
    let mut cumulative = Vec::with_capacity(max_len + 1);
    let mut total = 0.0f64;
    for len in 0..=max_len {
        let mut mass = 0.0f64;
        for_each_string(n, len, |y| {
            mass += s.score(y)?;
            Ok(())
        })?;
        total += mass;
        per_len.push(mass);
        cumulative.push(total);
    }
    Ok(MassReport { per_len, cumulative })
}

/// Automaton with exact rational weights; the bit-exact oracle behind the
/// float stringsum.
#[derive(Debug, Clone)]
pub struct ExactWfsa {
    alphabet: Alphabet,
    n_states: usize,
    transitions: Vec<(StateId, Symbol, BigRational, StateId)>,
    lambda: Vec<BigRational>,
    rho: Vec<BigRational>,
}

impl ExactWfsa {
    pub fn new(alphabet: Alphabet, n_states: usize) -> Self {
        ExactWfsa {
            alphabet,
            n_states,
            transitions: Vec::new(),
            lambda: vec![BigRational::zero(); n_states],
            rho: vec![BigRational::zero(); n_states],
        }
    }

    pub fn set_initial(&mut self, q: StateId, w: BigRational) {
        self.lambda[q] = w;
    }

    pub fn set_final(&mut self, q: StateId, w: BigRational) {
        self.rho[q] = w;
    }

    pub fn add_transition(&mut self, src: StateId, sym: Symbol, w: BigRational, dst: StateId) {
        self.transitions.push((src, sym, w, dst));
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Every finite f64 is a dyadic rational, so a float automaton converts
    /// exactly.
    pub fn from_wfsa(a: &Wfsa) -> Self {
        let conv = |x: f64| BigRational::from_float(x).expect("finite weight");
        let mut out = ExactWfsa::new(a.alphabet().clone(), a.n_states());
        for q in 0..a.n_states() {
            out.set_initial(q, conv(a.initial_weight(q)));
            out.set_final(q, conv(a.final_weight(q)));
        }
        for t in a.transitions() {
            out.add_transition(t.src, t.sym, conv(t.weight), t.dst);
        }
        out
    }

    /// Exact forward stringsum.
    pub fn stringsum_exact(&self, y: &[Symbol]) -> Result<BigRational> {
        for s in y {
            if s.index() >= self.alphabet.len() {
                return Err(Error::UnknownSymbol(format!("#{}", s.0)));
            }
        }
        let mut fwd = self.lambda.clone();
        for &s in y {
            let mut next = vec![BigRational::zero(); self.n_states];
            for (src, sym, w, dst) in &self.transitions {
                if *sym == s && !fwd[*src].is_zero() {
                    let add = &fwd[*src] * w;
                    next[*dst] += add;
                }
            }
            fwd = next;
        }
        let mut total = BigRational::zero();
        for (a, r) in fwd.iter().zip(&self.rho) {
            total += a * r;
        }
        Ok(total)
    }
}

/// Parse a decimal literal like `0.45`, `1`, or `9e-2` into an exact
/// rational.
pub fn rational_from_decimal(s: &str) -> Result<BigRational> {
    let err = || Error::Parse { line: 0, msg: format!("`{s}` is not a decimal number") };
    let mut rest = s;
    let mut negative = false;
    if let Some(r) = rest.strip_prefix('-') {
        negative = true;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    let (mantissa, exp10) = match rest.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().map_err(|_| err())?),
        None => (rest, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = digits.parse().map_err(|_| err())?;
    if negative {
        numer = -numer;
    }
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let scale = ten.pow(shift.unsigned_abs() as u32);
    Ok(if shift >= 0 {
        BigRational::new(numer * scale, BigInt::one())
    } else {
        BigRational::new(numer, scale)
    })
}

/// Exact-rational encodings of the bundled fixtures.
pub fn fixtures_exact() -> Vec<(&'static str, ExactWfsa)> {
    let rat = |s: &str| rational_from_decimal(s).unwrap();

    let mut fslm = ExactWfsa::new(Alphabet::from_names(["a", "b"]).unwrap(), 3);
    fslm.set_initial(0, rat("1"));
    fslm.set_final(2, rat("0.3"));
    fslm.add_transition(0, Symbol(0), rat("0.6"), 1);
    fslm.add_transition(0, Symbol(1), rat("0.4"), 2);
    fslm.add_transition(1, Symbol(1), rat("0.1"), 1);
    fslm.add_transition(1, Symbol(0), rat("0.9"), 2);
    fslm.add_transition(2, Symbol(1), rat("0.7"), 2);

    let mut nondet = ExactWfsa::new(Alphabet::from_names(["a", "b", "c"]).unwrap(), 4);
    nondet.set_initial(0, rat("1"));
    nondet.set_final(3, rat("1"));
    nondet.add_transition(0, Symbol(0), rat("0.5"), 1);
    nondet.add_transition(0, Symbol(0), rat("0.5"), 2);
    nondet.add_transition(1, Symbol(1), rat("0.9"), 1);
    nondet.add_transition(2, Symbol(1), rat("0.1"), 2);
    nondet.add_transition(1, Symbol(2), rat("0.1"), 3);
    nondet.add_transition(2, Symbol(2), rat("0.9"), 3);

    let mut minsky = ExactWfsa::new(Alphabet::from_names(["a", "b"]).unwrap(), 3);
    minsky.set_initial(0, rat("1"));
    minsky.set_final(2, rat("0.5"));
    minsky.add_transition(0, Symbol(0), rat("0.1"), 1);
    minsky.add_transition(0, Symbol(1), rat("0.9"), 2);
    minsky.add_transition(1, Symbol(0), rat("0.5"), 0);
    minsky.add_transition(1, Symbol(1), rat("0.5"), 2);
    minsky.add_transition(2, Symbol(1), rat("0.5"), 2);

    vec![
        ("example_fslm", fslm),
        ("nondet_pfsa", nondet),
        ("minsky_example", minsky),
    ]
}

/// |exact - float| relative agreement check used by the oracle suites.
pub fn floats_agree(exact: &BigRational, float: f64, rel_tol: f64) -> bool {
    let f = BigRational::from_float(float).expect("finite");
    let diff = (exact - &f).abs();
    let scale = exact.abs().max(BigRational::one());
    diff <= scale * BigRational::from_float(rel_tol).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wfsa::{example_fslm, fixtures, gen_random_dpfsa, nondet_pfsa};

    fn syms(a: &Alphabet, s: &str) -> Vec<Symbol> {
        if s.is_empty() {
            return Vec::new();
        }
        s.split_whitespace().map(|n| a.get(n).unwrap()).collect()
    }

    #[test]
    fn scorer_vs_itself_passes_with_zero_diff() {
        let a = example_fslm();
        let report = brute_equiv(&a as &dyn Scorer, &a as &dyn Scorer, 5, 1e-9).unwrap();
        assert!(report.pass);
        assert_eq!(report.max_abs_diff, 0.0);
        assert!(report.worst_string.is_none());
    }

    #[test]
    fn perturbation_fails_with_nonempty_worst_string() {
        let a = example_fslm();
        let mut b = example_fslm();
        // Nudge one weight by 1e-3; rebuild so both rows stay comparable.
        let mut c = crate::wfsa::Wfsa::new(b.alphabet().clone(), 3);
        c.set_initial(0, 1.0);
        c.set_final(2, 0.3);
        for t in b.transitions() {
            let w = if t.src == 0 && t.dst == 1 { t.weight + 1e-3 } else { t.weight };
            c.add_transition(t.src, t.sym, w, t.dst);
        }
        b = c;
        let report = brute_equiv(&a as &dyn Scorer, &b as &dyn Scorer, 6, 1e-9).unwrap();
        assert!(!report.pass);
        assert!(!report.worst_string.unwrap().is_empty());
    }

    #[test]
    fn brute_equiv_is_symmetric() {
        let a = example_fslm();
        let b = nondet_pfsa();
        // Different alphabets error out.
        assert!(matches!(
            brute_equiv(&a as &dyn Scorer, &b as &dyn Scorer, 3, 1e-9),
            Err(Error::AlphabetMismatch)
        ));

        for seed in 0..5u64 {
            let x = gen_random_dpfsa(seed, 3, 2);
            let y = gen_random_dpfsa(seed + 100, 3, 2);
            let r1 = brute_equiv(&x as &dyn Scorer, &y as &dyn Scorer, 5, 1e-9).unwrap();
            let r2 = brute_equiv(&y as &dyn Scorer, &x as &dyn Scorer, 5, 1e-9).unwrap();
            assert_eq!(r1.pass, r2.pass);
            assert_eq!(r1.max_abs_diff, r2.max_abs_diff);
            assert_eq!(r1.n_checked, r2.n_checked);
        }
    }

    #[test]
    fn mass_examples() {
        let a = example_fslm();
        let report = mass_report(&a as &dyn Scorer, 12).unwrap();
        assert!(report.within_budget(1e-9));
        for w in report.cumulative.windows(2) {
            assert!(w[1] > w[0], "cumulative must strictly increase");
        }
        assert!(*report.cumulative.last().unwrap() <= 1.0 + 1e-9);

        // Immediate-stop automaton: everything at length 0.
        let mut stop = crate::wfsa::Wfsa::new(Alphabet::from_names(["a"]).unwrap(), 1);
        stop.set_initial(0, 1.0);
        stop.set_final(0, 1.0);
        let report = mass_report(&stop as &dyn Scorer, 4).unwrap();
        assert_eq!(report.cumulative[0], 1.0);
        assert_eq!(report.cumulative[4], 1.0);

        // Closed form for the non-determinizable fixture.
        let n = nondet_pfsa();
        let report = mass_report(&n as &dyn Scorer, 10).unwrap();
        let want: f64 = (0..=8)
            .map(|k| 0.5 * 0.9f64.powi(k) * 0.1 + 0.5 * 0.1f64.powi(k) * 0.9)
            .sum();
        assert!((report.cumulative[10] - want).abs() < 1e-12);
    }

    #[test]
    fn exact_stringsums() {
        let fx = fixtures_exact();
        let (_, minsky) = &fx[2];
        let w = minsky.stringsum_exact(&syms(minsky.alphabet(), "b")).unwrap();
        assert_eq!(w, rational_from_decimal("0.45").unwrap());
        assert_eq!(w, BigRational::new(BigInt::from(9), BigInt::from(20)));

        let (_, fslm) = &fx[0];
        let w = fslm.stringsum_exact(&syms(fslm.alphabet(), "a a")).unwrap();
        assert_eq!(w, BigRational::new(BigInt::from(81), BigInt::from(500)));

        let mut single = ExactWfsa::new(Alphabet::from_names(["a"]).unwrap(), 1);
        single.set_initial(0, BigRational::one());
        single.set_final(0, BigRational::one());
        assert_eq!(single.stringsum_exact(&[]).unwrap(), BigRational::one());
    }

    #[test]
    fn float_stringsum_tracks_exact_oracle() {
        // Fixtures: compare the decimal-exact oracle against floats.
        for ((_, exact), (_, float)) in fixtures_exact().iter().zip(fixtures()) {
            let n = float.alphabet().len();
            for len in 0..=8usize {
                for_each_string(n, len, |y| {
                    let e = exact.stringsum_exact(y).unwrap();
                    let f = float.stringsum(y).unwrap();
                    assert!(floats_agree(&e, f, 1e-12), "string {y:?}");
                    Ok(())
                })
                .unwrap();
            }
        }
        // Random automata: dyadic-exact mirror of the float weights.
        for seed in 0..50u64 {
            let a = gen_random_dpfsa(seed, 1 + (seed % 5) as usize, 1 + (seed % 3) as usize);
            let exact = ExactWfsa::from_wfsa(&a);
            let n = a.alphabet().len();
            for len in 0..=8usize {
                for_each_string(n, len, |y| {
                    let e = exact.stringsum_exact(y).unwrap();
                    let f = a.stringsum(y).unwrap();
                    assert!(floats_agree(&e, f, 1e-12), "seed {seed} string {y:?}");
                    Ok(())
                })
                .unwrap();
            }
        }
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(
            rational_from_decimal("0.45").unwrap(),
            BigRational::new(BigInt::from(9), BigInt::from(20))
        );
        assert_eq!(rational_from_decimal("1").unwrap(), BigRational::one());
        assert_eq!(
            rational_from_decimal("9e-2").unwrap(),
            BigRational::new(BigInt::from(9), BigInt::from(100))
        );
        assert_eq!(
            rational_from_decimal("-2.5e1").unwrap(),
            BigRational::from_integer(BigInt::from(-25))
        );
        assert!(rational_from_decimal("abc").is_err());
        assert!(rational_from_decimal("").is_err());
    }
}
