//! Weighted finite-state automata over real probability weights.
//!
//! A [`Wfsa`] is the 5-tuple (alphabet, states, weighted transitions, initial
//! weights, final weights). States are plain integers `0..n_states`. The
//! module also ships the bundled test automata ([`fixtures`]) and the seeded
//! generators used throughout the test suites.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

pub type StateId = usize;

/// Index into an [`Alphabet`]. The end-of-sequence marker is *not* a symbol;
/// language-model scoring uses the virtual index `|Σ|` for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Interned symbol table. Ids are dense `0..len`.
#[derive(Debug, Clone, Default)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new() -> Self {
        Alphabet::default()
    }

    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut a = Alphabet::new();
        for n in names {
            let n = n.as_ref();
            if n.is_empty() || n.contains(char::is_whitespace) || n.contains('#') {
                return Err(Error::InvalidArgument(format!(
                    "symbol name `{n}` would not survive the text format"
                )));
            }
            if a.index.contains_key(n) {
                return Err(Error::InvalidArgument(format!("duplicate symbol `{n}`")));
            }
            a.intern(n);
        }
        Ok(a)
    }

    /// Returns the existing id for `name` or assigns the next free one.
    /// Names must be single whitespace-free tokens without `#`; the parsers
    /// guarantee this by construction.
    pub fn intern(&mut self, name: &str) -> Symbol {
        debug_assert!(
            !name.is_empty() && !name.contains(char::is_whitespace) && !name.contains('#'),
            "symbol name `{name}` is not format-safe"
        );
        if let Some(&id) = self.index.get(name) {
            return Symbol(id);
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        Symbol(id)
    }

    pub fn get(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied().map(Symbol)
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.names[sym.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len() as u32).map(Symbol)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}
impl Eq for Alphabet {}

/// A single weighted transition `src --sym/weight--> dst`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub src: StateId,
    pub sym: Symbol,
    pub weight: f64,
    pub dst: StateId,
}

/// Weighted finite-state automaton.
#[derive(Debug, Clone, PartialEq)]
pub struct Wfsa {
    alphabet: Alphabet,
    n_states: usize,
    transitions: Vec<Transition>,
    lambda: Vec<f64>,
    rho: Vec<f64>,
    /// Transition indices grouped by source state.
    adj: Vec<Vec<usize>>,
}

impl Wfsa {
    pub fn new(alphabet: Alphabet, n_states: usize) -> Self {
        Wfsa {
            alphabet,
            n_states,
            transitions: Vec::new(),
            lambda: vec![0.0; n_states],
            rho: vec![0.0; n_states],
            adj: vec![Vec::new(); n_states],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn initial_weight(&self, q: StateId) -> f64 {
        self.lambda[q]
    }

    pub fn final_weight(&self, q: StateId) -> f64 {
        self.rho[q]
    }

    pub fn set_initial(&mut self, q: StateId, w: f64) {
        self.lambda[q] = w;
    }

    pub fn set_final(&mut self, q: StateId, w: f64) {
        self.rho[q] = w;
    }

    pub fn add_transition(&mut self, src: StateId, sym: Symbol, weight: f64, dst: StateId) {
        assert!(src < self.n_states && dst < self.n_states, "state out of range");
        assert!(sym.index() < self.alphabet.len(), "symbol out of range");
        self.adj[src].push(self.transitions.len());
        self.transitions.push(Transition { src, sym, weight, dst });
    }

    pub fn arcs_from(&self, q: StateId) -> impl Iterator<Item = &Transition> + '_ {
        self.adj[q].iter().map(move |&i| &self.transitions[i])
    }

    /// First `y`-transition out of `q`, if any. Unique for deterministic
    /// automata.
    pub fn successor(&self, q: StateId, y: Symbol) -> Option<&Transition> {
        self.arcs_from(q).find(|t| t.sym == y)
    }

    /// The unique state with nonzero initial weight, when there is exactly one.
    pub fn single_initial(&self) -> Option<StateId> {
        let mut init = None;
        for q in 0..self.n_states {
            if self.lambda[q] != 0.0 {
                if init.is_some() {
                    return None;
                }
                init = Some(q);
            }
        }
        init
    }

    /// Every (state, symbol) pair has at least one outgoing transition.
    pub fn is_complete(&self) -> bool {
        (0..self.n_states).all(|q| {
            self.alphabet
                .symbols()
                .all(|y| self.arcs_from(q).any(|t| t.sym == y))
        })
    }

    /// Interns `names` and errors on the first unknown one.
    pub fn symbols_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<Symbol>> {
        names
            .iter()
            .map(|n| {
                self.alphabet
                    .get(n.as_ref())
                    .ok_or_else(|| Error::UnknownSymbol(n.as_ref().to_string()))
            })
            .collect()
    }

    /// λ(first src) · Π weights · ρ(last dst). The empty path is the weight of
    /// accepting at an initial state, λ(q)·ρ(q), and needs a state to anchor
    /// it, so it is not representable here; pass paths with ≥ 1 transition or
    /// use [`Wfsa::stringsum`] on the empty string instead.
    pub fn path_weight(&self, path: &[Transition]) -> Result<f64> {
        if path.is_empty() {
            // Degenerate by convention: empty product anchored at the single
            // initial state.
            let q = self
                .single_initial()
                .ok_or_else(|| Error::InvalidPath("empty path needs a unique initial state".into()))?;
            return Ok(self.lambda[q] * self.rho[q]);
        }
        for w in path.windows(2) {
            if w[0].dst != w[1].src {
                return Err(Error::InvalidPath(format!(
                    "transitions not consecutive: {} -> {} followed by {} -> {}",
                    w[0].src, w[0].dst, w[1].src, w[1].dst
                )));
            }
        }
        for t in path {
            if !self.transitions.iter().any(|u| u == t) {
                return Err(Error::InvalidPath(format!(
                    "transition {} --{}--> {} not in the automaton",
                    t.src,
                    self.alphabet.name(t.sym),
                    t.dst
                )));
            }
        }
        let mut w = self.lambda[path[0].src];
        for t in path {
            w *= t.weight;
        }
        Ok(w * self.rho[path.last().unwrap().dst])
    }

    /// Total weight of all paths scanning `y`: forward dynamic programming
    /// over state-weight vectors, one per prefix. Works for non-deterministic
    /// automata.
    pub fn stringsum(&self, y: &[Symbol]) -> Result<f64> {
        for s in y {
            if s.index() >= self.alphabet.len() {
                return Err(Error::UnknownSymbol(format!("#{}", s.0)));
            }
        }
        let mut fwd = self.lambda.clone();
        for &s in y {
            let mut next = vec![0.0; self.n_states];
            for t in &self.transitions {
                if t.sym == s && fwd[t.src] != 0.0 {
                    next[t.dst] += fwd[t.src] * t.weight;
                }
            }
            fwd = next;
        }
        Ok(fwd.iter().zip(&self.rho).map(|(a, r)| a * r).sum())
    }

    /// Unweighted acceptance: some path with all-nonzero weights scans `y`
    /// from a nonzero-λ state to a nonzero-ρ state.
    pub fn accepts(&self, y: &[Symbol]) -> bool {
        let mut live: Vec<bool> = self.lambda.iter().map(|&w| w != 0.0).collect();
        for &s in y {
            let mut next = vec![false; self.n_states];
            for t in &self.transitions {
                if t.sym == s && t.weight != 0.0 && live[t.src] {
                    next[t.dst] = true;
                }
            }
            live = next;
        }
        live.iter().zip(&self.rho).any(|(&a, &r)| a && r != 0.0)
    }

    /// One nonzero-λ state and at most one y-transition per (state, symbol).
    pub fn is_deterministic(&self) -> bool {
        if self.single_initial().is_none() {
            return false;
        }
        let mut seen = HashMap::new();
        for t in &self.transitions {
            if seen.insert((t.src, t.sym), t.dst).is_some() {
                return false;
            }
        }
        true
    }

    /// All weights nonnegative, initial weights sum to 1, and every state's
    /// outgoing-plus-final mass sums to 1, within `tol`.
    pub fn is_probabilistic(&self, tol: f64) -> bool {
        if self.lambda.iter().chain(&self.rho).any(|&w| w < 0.0)
            || self.transitions.iter().any(|t| t.weight < 0.0)
        {
            return false;
        }
        let init: f64 = self.lambda.iter().sum();
        if (init - 1.0).abs() > tol {
            return false;
        }
        (0..self.n_states).all(|q| {
            let mass: f64 = self.arcs_from(q).map(|t| t.weight).sum::<f64>() + self.rho[q];
            (mass - 1.0).abs() <= tol
        })
    }

    /// Deterministic and with at most one connecting transition per ordered
    /// state pair.
    pub fn is_log_separable(&self) -> bool {
        if !self.is_deterministic() {
            return false;
        }
        let mut pairs = HashMap::new();
        for t in &self.transitions {
            if let Some(prev) = pairs.insert((t.src, t.dst), t.sym) {
                if prev != t.sym {
                    return false;
                }
            }
        }
        true
    }
}

/// Default tolerance for the probabilistic row-sum check.
pub const DEFAULT_PROB_TOL: f64 = 1e-9;

/// The three-state family over N symbols where `y1` goes `0 -> 1` and every
/// other symbol goes `0 -> 2`, lifted to a uniform DPFSA: state 0 spreads mass
/// 1/N over the symbols, states 1 and 2 are absorbing-final.
pub fn gen_a_n(n_symbols: usize) -> Result<Wfsa> {
    if n_symbols < 2 {
        return Err(Error::InvalidArgument(format!(
            "family needs at least 2 symbols, got {n_symbols}"
        )));
    }
    let alphabet = Alphabet::from_names((1..=n_symbols).map(|i| format!("y{i}")))?;
    let mut a = Wfsa::new(alphabet, 3);
    a.set_initial(0, 1.0);
    a.set_final(1, 1.0);
    a.set_final(2, 1.0);
    let w = 1.0 / n_symbols as f64;
    for i in 0..n_symbols {
        let dst = if i == 0 { 1 } else { 2 };
        a.add_transition(0, Symbol(i as u32), w, dst);
    }
    Ok(a)
}

/// Seeded random complete DPFSA: every (state, symbol) has a uniformly chosen
/// target, per-state weight rows come from a stick-breaking split over the
/// symbols plus the final weight, state 0 is the only initial state.
pub fn gen_random_dpfsa(seed: u64, n_states: usize, n_symbols: usize) -> Wfsa {
    assert!(n_states >= 1 && n_symbols >= 1);
    let mut rng = SplitMix64::new(seed);
    let alphabet =
        Alphabet::from_names((0..n_symbols).map(|i| format!("s{i}"))).expect("unique names");
    let mut a = Wfsa::new(alphabet, n_states);
    a.set_initial(0, 1.0);
    for q in 0..n_states {
        let mut remaining = 1.0_f64;
        let mut weights = Vec::with_capacity(n_symbols);
        for _ in 0..n_symbols {
            let w = remaining * rng.unit_open();
            weights.push(w);
            remaining -= w;
        }
        // Final weight takes whatever is left so the row sums to 1 up to a
        // single rounding.
        let rho = 1.0 - weights.iter().sum::<f64>();
        a.set_final(q, rho.max(0.0));
        for (i, w) in weights.into_iter().enumerate() {
            let dst = rng.below(n_states);
            a.add_transition(q, Symbol(i as u32), w, dst);
        }
    }
    a
}

/// Complete deterministic FSA with random topology, weight 1 on every
/// transition; used by the compressed-encoding suites. All states final.
pub fn gen_random_complete_fsa(seed: u64, n_states: usize, n_symbols: usize) -> Wfsa {
    assert!(n_states >= 1 && n_symbols >= 1);
    let mut rng = SplitMix64::new(seed);
    let alphabet =
        Alphabet::from_names((0..n_symbols).map(|i| format!("s{i}"))).expect("unique names");
    let mut a = Wfsa::new(alphabet, n_states);
    a.set_initial(0, 1.0);
    for q in 0..n_states {
        // Roughly half the states final, keeps acceptors non-trivial.
        if rng.below(2) == 0 {
            a.set_final(q, 1.0);
        }
        for y in 0..n_symbols {
            a.add_transition(q, Symbol(y as u32), 1.0, rng.below(n_states));
        }
    }
    a
}

/// PFSA over {a, b}: q0 --a/0.6--> q1, q0 --b/0.4--> q2, q1 --b/0.1--> q1,
/// q1 --a/0.9--> q2, q2 --b/0.7--> q2, final weight 0.3 on q2. Its support is
/// a b^n a b^m and b b^m.
pub fn example_fslm() -> Wfsa {
    let alphabet = Alphabet::from_names(["a", "b"]).unwrap();
    let a_sym = Symbol(0);
    let b_sym = Symbol(1);
    let mut a = Wfsa::new(alphabet, 3);
    a.set_initial(0, 1.0);
    a.set_final(2, 0.3);
    a.add_transition(0, a_sym, 0.6, 1);
    a.add_transition(0, b_sym, 0.4, 2);
    a.add_transition(1, b_sym, 0.1, 1);
    a.add_transition(1, a_sym, 0.9, 2);
    a.add_transition(2, b_sym, 0.7, 2);
    a
}

/// Non-determinizable PFSA: two parallel b-loops with swapped weights, merged
/// on c. Assigns a b^n c the mass 0.5·0.9^n·0.1 + 0.5·0.1^n·0.9.
pub fn nondet_pfsa() -> Wfsa {
    let alphabet = Alphabet::from_names(["a", "b", "c"]).unwrap();
    let (a_sym, b_sym, c_sym) = (Symbol(0), Symbol(1), Symbol(2));
    let mut a = Wfsa::new(alphabet, 4);
    a.set_initial(0, 1.0);
    a.set_final(3, 1.0);
    a.add_transition(0, a_sym, 0.5, 1);
    a.add_transition(0, a_sym, 0.5, 2);
    a.add_transition(1, b_sym, 0.9, 1);
    a.add_transition(2, b_sym, 0.1, 2);
    a.add_transition(1, c_sym, 0.1, 3);
    a.add_transition(2, c_sym, 0.9, 3);
    a
}

/// Three-state DPFSA used by the worked one-hot compilation example:
/// q0 --a/0.1--> q1, q0 --b/0.9--> q2, q1 --a/0.5--> q0, q1 --b/0.5--> q2,
/// q2 --b/0.5--> q2, final weight 0.5 on q2.
pub fn minsky_example() -> Wfsa {
    let alphabet = Alphabet::from_names(["a", "b"]).unwrap();
    let (a_sym, b_sym) = (Symbol(0), Symbol(1));
    let mut a = Wfsa::new(alphabet, 3);
    a.set_initial(0, 1.0);
    a.set_final(2, 0.5);
    a.add_transition(0, a_sym, 0.1, 1);
    a.add_transition(0, b_sym, 0.9, 2);
    a.add_transition(1, a_sym, 0.5, 0);
    a.add_transition(1, b_sym, 0.5, 2);
    a.add_transition(2, b_sym, 0.5, 2);
    a
}

/// Unweighted deterministic fragment used by the two-hot encoding examples:
/// 0 --a--> 1, 0 --b--> 2, 1 --a--> 2, 1 --b--> 1, 2 --b--> 0. State 2 has no
/// a-transition, so the automaton is not complete.
pub fn dewdney_example_fsa() -> Wfsa {
    let alphabet = Alphabet::from_names(["a", "b"]).unwrap();
    let (a_sym, b_sym) = (Symbol(0), Symbol(1));
    let mut a = Wfsa::new(alphabet, 3);
    a.set_initial(0, 1.0);
    a.set_final(2, 1.0);
    a.add_transition(0, a_sym, 1.0, 1);
    a.add_transition(0, b_sym, 1.0, 2);
    a.add_transition(1, a_sym, 1.0, 2);
    a.add_transition(1, b_sym, 1.0, 1);
    a.add_transition(2, b_sym, 1.0, 0);
    a
}

/// The named probabilistic fixtures.
pub fn fixtures() -> Vec<(&'static str, Wfsa)> {
    vec![
        ("example_fslm", example_fslm()),
        ("nondet_pfsa", nondet_pfsa()),
        ("minsky_example", minsky_example()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms(a: &Wfsa, s: &str) -> Vec<Symbol> {
        if s.is_empty() {
            return Vec::new();
        }
        s.split_whitespace()
            .map(|n| a.alphabet().get(n).unwrap())
            .collect()
    }

    /// Independent oracle: enumerate all transition sequences of length |y|
    /// explicitly and sum the weights of those scanning y.
    fn stringsum_by_path_enumeration(a: &Wfsa, y: &[Symbol]) -> f64 {
        fn rec(a: &Wfsa, y: &[Symbol], q: StateId, acc: f64, total: &mut f64) {
            match y.first() {
                None => *total += acc * a.final_weight(q),
                Some(&s) => {
                    for t in a.arcs_from(q) {
                        if t.sym == s {
                            rec(a, &y[1..], t.dst, acc * t.weight, total);
                        }
                    }
                }
            }
        }
        let mut total = 0.0;
        for q in 0..a.n_states() {
            if a.initial_weight(q) != 0.0 {
                rec(a, y, q, a.initial_weight(q), &mut total);
            }
        }
        total
    }

    #[test]
    fn alphabet_rejects_unsafe_names() {
        assert!(Alphabet::from_names(["a b"]).is_err());
        assert!(Alphabet::from_names(["a#b"]).is_err());
        assert!(Alphabet::from_names([""]).is_err());
        assert!(Alphabet::from_names(["a", "a"]).is_err());
        assert!(Alphabet::from_names(["<eps>", "ab_c"]).is_ok());
    }

    #[test]
    fn path_weight_empty_path_single_state() {
        let mut a = Wfsa::new(Alphabet::from_names(["a"]).unwrap(), 1);
        a.set_initial(0, 1.0);
        a.set_final(0, 1.0);
        assert_eq!(a.path_weight(&[]).unwrap(), 1.0);
    }

    #[test]
    fn path_weight_example_fslm_b() {
        let a = example_fslm();
        let path = [*a.successor(0, Symbol(1)).unwrap()];
        let w = a.path_weight(&path).unwrap();
        assert!((w - 0.12).abs() < 1e-15, "got {w}");
    }

    #[test]
    fn path_weight_example_fslm_abab() {
        let a = example_fslm();
        let path = [
            *a.successor(0, Symbol(0)).unwrap(),
            *a.successor(1, Symbol(1)).unwrap(),
            *a.successor(1, Symbol(0)).unwrap(),
            *a.successor(2, Symbol(1)).unwrap(),
        ];
        let w = a.path_weight(&path).unwrap();
        let expect = 1.0 * 0.6 * 0.1 * 0.9 * 0.7 * 0.3;
        assert!((w - expect).abs() < 1e-15, "got {w}, want {expect}");
        assert!((w - 0.01134).abs() < 1e-12);
    }

    #[test]
    fn path_weight_rejects_non_consecutive() {
        let a = example_fslm();
        let path = [
            *a.successor(0, Symbol(0)).unwrap(),
            *a.successor(2, Symbol(1)).unwrap(),
        ];
        assert!(matches!(a.path_weight(&path), Err(Error::InvalidPath(_))));
    }

    #[test]
    fn stringsum_nondet_abc() {
        let a = nondet_pfsa();
        let w = a.stringsum(&syms(&a, "a b c")).unwrap();
        let expect = 0.5 * 0.9 * 0.1 + 0.5 * 0.1 * 0.9;
        assert!((w - expect).abs() < 1e-15);
        assert!((w - 0.09).abs() < 1e-12);
    }

    #[test]
    fn stringsum_empty_string() {
        let mut a = Wfsa::new(Alphabet::from_names(["a"]).unwrap(), 1);
        a.set_initial(0, 1.0);
        a.set_final(0, 1.0);
        assert_eq!(a.stringsum(&[]).unwrap(), 1.0);
    }

    #[test]
    fn stringsum_unknown_symbol() {
        let a = example_fslm();
        assert!(matches!(
            a.stringsum(&[Symbol(9)]),
            Err(Error::UnknownSymbol(_))
        ));
    }

    #[test]
    fn stringsum_matches_path_enumeration_on_random_dpfsas() {
        for seed in 0..24u64 {
            let a = gen_random_dpfsa(seed, 1 + (seed % 6) as usize, 1 + (seed % 3) as usize);
            let n = a.alphabet().len();
            for len in 0..=6usize {
                // A few strings per length, deterministic pattern.
                for pattern in 0..3usize {
                    let y: Vec<Symbol> = (0..len)
                        .map(|i| Symbol(((i * (pattern + 1) + pattern) % n) as u32))
                        .collect();
                    let got = a.stringsum(&y).unwrap();
                    let want = stringsum_by_path_enumeration(&a, &y);
                    assert!(
                        (got - want).abs() <= 1e-12 * want.abs().max(1.0),
                        "seed {seed} len {len}: {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn determinism_checks() {
        assert!(example_fslm().is_deterministic());
        assert!(!nondet_pfsa().is_deterministic());
        let mut two_inits = Wfsa::new(Alphabet::from_names(["a"]).unwrap(), 2);
        two_inits.set_initial(0, 0.5);
        two_inits.set_initial(1, 0.5);
        assert!(!two_inits.is_deterministic());
    }

    #[test]
    fn probabilistic_checks() {
        assert!(example_fslm().is_probabilistic(DEFAULT_PROB_TOL));
        let mut single = Wfsa::new(Alphabet::from_names(["a"]).unwrap(), 1);
        single.set_initial(0, 1.0);
        single.set_final(0, 1.0);
        assert!(single.is_probabilistic(DEFAULT_PROB_TOL));

        // Perturb the q2 self-loop: row sum becomes 0.8 + 0.3.
        let mut perturbed = example_fslm();
        let idx = perturbed
            .transitions
            .iter()
            .position(|t| t.src == 2 && t.dst == 2)
            .unwrap();
        perturbed.transitions[idx].weight = 0.8;
        assert!(!perturbed.is_probabilistic(DEFAULT_PROB_TOL));
    }

    #[test]
    fn log_separability_checks() {
        // Two symbols between the same ordered pair.
        let mut two = Wfsa::new(Alphabet::from_names(["a", "b"]).unwrap(), 2);
        two.set_initial(0, 1.0);
        two.add_transition(0, Symbol(0), 1.0, 1);
        two.add_transition(0, Symbol(1), 1.0, 1);
        assert!(!two.is_log_separable());

        let mut self_loop = Wfsa::new(Alphabet::from_names(["a"]).unwrap(), 1);
        self_loop.set_initial(0, 1.0);
        self_loop.add_transition(0, Symbol(0), 1.0, 0);
        assert!(self_loop.is_log_separable());

        // Implication: separable => deterministic (vacuously checked here on
        // a nondeterministic automaton).
        assert!(!nondet_pfsa().is_log_separable());
    }

    #[test]
    fn a_n_family() {
        let a3 = gen_a_n(3).unwrap();
        assert_eq!(a3.transitions().len(), 3);
        assert!(a3.transitions().iter().all(|t| t.src == 0));

        let a2 = gen_a_n(2).unwrap();
        let dsts: Vec<_> = a2.transitions().iter().map(|t| (t.sym.0, t.dst)).collect();
        assert_eq!(dsts, vec![(0, 1), (1, 2)]);

        assert!(gen_a_n(5).unwrap().is_deterministic());
        assert!(gen_a_n(5).unwrap().is_probabilistic(DEFAULT_PROB_TOL));
        assert!(matches!(gen_a_n(1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn random_dpfsa_properties() {
        for seed in 0..50u64 {
            let a = gen_random_dpfsa(seed, 1 + (seed as usize % 6), 1 + (seed as usize % 4));
            assert!(a.is_deterministic());
            assert!(a.is_probabilistic(1e-12), "seed {seed}");
        }
        let a = gen_random_dpfsa(123, 4, 3);
        let b = gen_random_dpfsa(123, 4, 3);
        assert_eq!(a, b);
        assert_eq!(a.transitions().len(), 12);
    }

    #[test]
    fn fixture_stringsums() {
        let a = example_fslm();
        let w = a.stringsum(&syms(&a, "a a")).unwrap();
        assert!((w - 0.162).abs() < 1e-15, "got {w}");

        let m = minsky_example();
        let w = m.stringsum(&syms(&m, "b")).unwrap();
        assert!((w - 0.45).abs() < 1e-15, "got {w}");

        let n = nondet_pfsa();
        let w = n.stringsum(&syms(&n, "a c")).unwrap();
        assert!((w - 0.5).abs() < 1e-15, "got {w}");
    }

    #[test]
    fn prefix_mass_bounded_on_fixtures() {
        for (_, a) in fixtures() {
            let n = a.alphabet().len();
            let mut total = 0.0;
            for len in 0..=8usize {
                let mut y = vec![Symbol(0); len];
                loop {
                    total += a.stringsum(&y).unwrap();
                    // Odometer over symbol indices.
                    let mut i = 0;
                    while i < len {
                        if (y[i].index() + 1) < n {
                            y[i] = Symbol(y[i].0 + 1);
                            break;
                        }
                        y[i] = Symbol(0);
                        i += 1;
                    }
                    if i == len {
                        break;
                    }
                }
            }
            assert!(total <= 1.0 + 1e-9, "mass {total}");
        }
    }
}
