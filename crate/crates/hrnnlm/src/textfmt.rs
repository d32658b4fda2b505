//! Text formats for automata, RNN language models, and threshold networks.
//!
//! Automaton format, one record per line, whitespace separated, `#` starts a
//! comment:
//!
//! ```text
//! @alphabet a b          # optional: pins symbol ids in listed order
//! @states 3              # optional: pins the state count
//! @init 0 1.0            # initial weight (weight optional, default 1)
//! 0 1 a 0.6              # transition: src dst symbol [weight]
//! 2 0.3                  # final: state [weight]
//! ```
//!
//! Symbols are interned in file order. Unweighted automata just omit the
//! weight fields.
//!
//! Network parameter format: `hrnn v1` header, then `projection`, `alphabet`,
//! `D`, `R`, and the arrays `U` (D rows), `V` (D rows), `b`, `h0`, `E`
//! (|Σ|+1 rows, EOS last). The token `-inf` is allowed only inside `E`;
//! `inf` and `nan` are rejected everywhere. Finite values round-trip
//! bit-exactly.
//!
//! Threshold-net format: `tnet v1` header followed by the code (`dewdney s`
//! or `indyk r <perm>`), acceptor data, and integer sublayer blocks.

use std::fmt::Write as _;

use crate::compress::{FourHotCode, NetCode, Sublayer, ThresholdNet, TwoHotCode};
use crate::error::{Error, Result};
use crate::hrnn::{ExtReal, HrnnLm, Projection};
use crate::wfsa::{Alphabet, Wfsa};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_f64(line: usize, tok: &str) -> Result<f64> {
    let v: f64 = tok.parse().map_err(|_| perr(line, format!("bad number `{tok}`")))?;
    if !v.is_finite() {
        return Err(perr(line, format!("non-finite value `{tok}`")));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Automaton format
// ---------------------------------------------------------------------------

pub fn parse_fsa(text: &str) -> Result<Wfsa> {
    struct Raw {
        line: usize,
        fields: Vec<String>,
    }
    let mut alphabet = Alphabet::new();
    let mut n_states_directive: Option<usize> = None;
    let mut inits: Vec<(usize, usize, f64)> = Vec::new();
    let mut finals: Vec<(usize, usize, f64)> = Vec::new();
    let mut raw_transitions: Vec<Raw> = Vec::new();
    let mut max_state = 0usize;

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        match fields[0] {
            "@alphabet" => {
                for name in &fields[1..] {
                    alphabet.intern(name);
                }
            }
            "@states" => {
                if fields.len() != 2 {
                    return Err(perr(line, "@states takes one count"));
                }
                let n = fields[1].parse().map_err(|_| perr(line, "bad state count"))?;
                n_states_directive = Some(n);
            }
            "@init" => {
                if fields.len() < 2 || fields.len() > 3 {
                    return Err(perr(line, "@init takes a state and an optional weight"));
                }
                let q: usize = fields[1].parse().map_err(|_| perr(line, "bad state id"))?;
                let w = if fields.len() == 3 { parse_f64(line, fields[2])? } else { 1.0 };
                max_state = max_state.max(q);
                inits.push((line, q, w));
            }
            _ => match fields.len() {
                1 | 2 => {
                    let q: usize = fields[0].parse().map_err(|_| perr(line, "bad state id"))?;
                    let w = if fields.len() == 2 { parse_f64(line, fields[1])? } else { 1.0 };
                    max_state = max_state.max(q);
                    finals.push((line, q, w));
                }
                3 | 4 => {
                    let src: usize = fields[0].parse().map_err(|_| perr(line, "bad src state"))?;
                    let dst: usize = fields[1].parse().map_err(|_| perr(line, "bad dst state"))?;
                    max_state = max_state.max(src).max(dst);
                    raw_transitions.push(Raw {
                        line,
                        fields: fields.iter().map(|s| s.to_string()).collect(),
                    });
                    let _ = (src, dst);
                }
                _ => return Err(perr(line, "expected 1-4 fields")),
            },
        }
    }

    // Intern transition symbols in file order.
    for t in &raw_transitions {
        alphabet.intern(&t.fields[2]);
    }

    let inferred = if raw_transitions.is_empty() && inits.is_empty() && finals.is_empty() {
        0
    } else {
        max_state + 1
    };
    let n_states = match n_states_directive {
        Some(n) => {
            if n < inferred {
                return Err(perr(0, format!("@states {n} but states up to {} appear", inferred - 1)));
            }
            n
        }
        None => inferred,
    };

    let mut a = Wfsa::new(alphabet, n_states);
    for (_, q, w) in inits {
        a.set_initial(q, w);
    }
    for (_, q, w) in finals {
        a.set_final(q, w);
    }
    for t in raw_transitions {
        let src: usize = t.fields[0].parse().unwrap();
        let dst: usize = t.fields[1].parse().unwrap();
        let sym = a.alphabet().get(&t.fields[2]).expect("interned above");
        let w = if t.fields.len() == 4 { parse_f64(t.line, &t.fields[3])? } else { 1.0 };
        a.add_transition(src, sym, w, dst);
    }
    Ok(a)
}

pub fn print_fsa(a: &Wfsa) -> String {
    let mut out = String::new();
    if !a.alphabet().is_empty() {
        out.push_str("@alphabet");
        for name in a.alphabet().names() {
            let _ = write!(out, " {name}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "@states {}", a.n_states());
    for q in 0..a.n_states() {
        if a.initial_weight(q) != 0.0 {
            let _ = writeln!(out, "@init {q} {}", a.initial_weight(q));
        }
    }
    for t in a.transitions() {
        let _ = writeln!(out, "{} {} {} {}", t.src, t.dst, a.alphabet().name(t.sym), t.weight);
    }
    for q in 0..a.n_states() {
        if a.final_weight(q) != 0.0 {
            let _ = writeln!(out, "{q} {}", a.final_weight(q));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// RNN LM format
// ---------------------------------------------------------------------------

struct LineCursor<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> LineCursor<'a> {
    fn new(text: &'a str) -> Self {
        LineCursor { lines: text.lines().enumerate() }
    }

    /// Next non-empty, non-comment line as (1-based line number, fields).
    fn next_fields(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.lines.by_ref() {
            let content = raw.split('#').next().unwrap_or("");
            let fields: Vec<&str> = content.split_whitespace().collect();
            if !fields.is_empty() {
                return Some((i + 1, fields));
            }
        }
        None
    }

    fn expect(&mut self, key: &str) -> Result<(usize, Vec<&'a str>)> {
        let (line, fields) =
            self.next_fields().ok_or_else(|| perr(0, format!("missing `{key}` section")))?;
        if fields[0] != key {
            return Err(perr(line, format!("expected `{key}`, found `{}`", fields[0])));
        }
        Ok((line, fields))
    }
}

fn fmt_f64(x: f64) -> String {
    // Shortest representation that parses back to the same bits.
    format!("{x}")
}

pub fn print_hrnn(lm: &HrnnLm) -> String {
    let mut out = String::from("hrnn v1\n");
    let _ = writeln!(out, "projection {}", lm.projection.name());
    out.push_str("alphabet");
    for name in lm.alphabet.names() {
        let _ = write!(out, " {name}");
    }
    out.push('\n');
    let _ = writeln!(out, "D {}", lm.d);
    let _ = writeln!(out, "R {}", lm.r);
    let row = |out: &mut String, vals: &[f64]| {
        let strs: Vec<String> = vals.iter().map(|&v| fmt_f64(v)).collect();
        let _ = writeln!(out, "{}", strs.join(" "));
    };
    out.push_str("U\n");
    for r in 0..lm.d {
        row(&mut out, &lm.u[r * lm.d..(r + 1) * lm.d]);
    }
    out.push_str("V\n");
    for r in 0..lm.d {
        row(&mut out, &lm.v[r * lm.r..(r + 1) * lm.r]);
    }
    out.push_str("b\n");
    row(&mut out, &lm.bias);
    out.push_str("h0\n");
    let h0: Vec<String> = lm.h0.iter().map(|b| b.to_string()).collect();
    let _ = writeln!(out, "{}", h0.join(" "));
    out.push_str("E\n");
    for r in 0..=lm.r {
        let strs: Vec<String> = lm.e[r * lm.d..(r + 1) * lm.d]
            .iter()
            .map(|x| match x {
                ExtReal::Finite(v) => fmt_f64(*v),
                ExtReal::NegInf => "-inf".to_string(),
            })
            .collect();
        let _ = writeln!(out, "{}", strs.join(" "));
    }
    out
}

pub fn parse_hrnn(text: &str) -> Result<HrnnLm> {
    let mut cur = LineCursor::new(text);
    let (line, header) = cur.next_fields().ok_or_else(|| perr(0, "empty file"))?;
    if header != ["hrnn", "v1"] {
        return Err(perr(line, "expected `hrnn v1` header"));
    }
    let (line, proj) = cur.expect("projection")?;
    if proj.len() != 2 {
        return Err(perr(line, "projection takes one value"));
    }
    let projection = Projection::from_name(proj[1])?;
    let (_, alpha) = cur.expect("alphabet")?;
    let alphabet = Alphabet::from_names(&alpha[1..])?;
    let (line, d_fields) = cur.expect("D")?;
    let d: usize = d_fields
        .get(1)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(line, "bad D"))?;
    let (line, r_fields) = cur.expect("R")?;
    let r: usize = r_fields
        .get(1)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(line, "bad R"))?;
    if r != alphabet.len() {
        return Err(perr(line, "R must equal the alphabet size"));
    }

    let read_rows = |cur: &mut LineCursor, key: &str, rows: usize, cols: usize| -> Result<Vec<f64>> {
        cur.expect(key)?;
        let mut out = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (line, fields) =
                cur.next_fields().ok_or_else(|| perr(0, format!("truncated `{key}`")))?;
            if fields.len() != cols {
                return Err(perr(line, format!("`{key}` row needs {cols} values")));
            }
            for tok in fields {
                out.push(parse_f64(line, tok)?);
            }
        }
        Ok(out)
    };

    let u = read_rows(&mut cur, "U", d, d)?;
    let v = read_rows(&mut cur, "V", d, r)?;
    let bias = read_rows(&mut cur, "b", 1, d)?;
    cur.expect("h0")?;
    let (line, h0_fields) = cur.next_fields().ok_or_else(|| perr(0, "truncated `h0`"))?;
    if h0_fields.len() != d {
        return Err(perr(line, format!("`h0` needs {d} values")));
    }
    let h0 = h0_fields
        .iter()
        .map(|tok| match *tok {
            "0" => Ok(0u8),
            "1" => Ok(1u8),
            _ => Err(perr(line, "h0 entries must be 0 or 1")),
        })
        .collect::<Result<Vec<u8>>>()?;

    cur.expect("E")?;
    let mut e = Vec::with_capacity((r + 1) * d);
    for _ in 0..=r {
        let (line, fields) = cur.next_fields().ok_or_else(|| perr(0, "truncated `E`"))?;
        if fields.len() != d {
            return Err(perr(line, format!("`E` row needs {d} values")));
        }
        for tok in fields {
            if tok == "-inf" {
                e.push(ExtReal::NegInf);
            } else {
                e.push(ExtReal::Finite(parse_f64(line, tok)?));
            }
        }
    }
    if let Some((line, fields)) = cur.next_fields() {
        return Err(perr(line, format!("unexpected trailing `{}`", fields[0])));
    }
    HrnnLm::new(alphabet, d, u, v, bias, h0, e, projection)
}

// ---------------------------------------------------------------------------
// Threshold-net format
// ---------------------------------------------------------------------------

pub fn print_tnet(net: &ThresholdNet) -> String {
    let mut out = String::from("tnet v1\n");
    let _ = writeln!(out, "method {}", net.method);
    out.push_str("alphabet");
    for name in net.alphabet.names() {
        let _ = write!(out, " {name}");
    }
    out.push('\n');
    let _ = writeln!(out, "states {}", net.n_states);
    match &net.code {
        NetCode::TwoHot(c) => {
            let _ = writeln!(out, "code dewdney {}", c.s);
        }
        NetCode::FourHot(c) => {
            let perm: Vec<String> = c.perm().iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "code indyk {} {}", c.r, perm.join(" "));
        }
    }
    let _ = writeln!(out, "init {}", net.init_state);
    out.push_str("finals");
    for (q, f) in net.finals.iter().enumerate() {
        if *f {
            let _ = write!(out, " {q}");
        }
    }
    out.push('\n');
    let _ = writeln!(out, "layers {}", net.layers.len());
    for layer in &net.layers {
        let has_sym = layer.sym_weights.is_some();
        let _ = writeln!(
            out,
            "layer {} {} {}",
            layer.n_out,
            layer.n_in,
            if has_sym { "sym" } else { "nosym" }
        );
        for o in 0..layer.n_out {
            let row: Vec<String> = layer.weights[o * layer.n_in..(o + 1) * layer.n_in]
                .iter()
                .map(|w| w.to_string())
                .collect();
            let _ = writeln!(out, "w {}", row.join(" "));
        }
        if let Some(sw) = &layer.sym_weights {
            let n_sym = net.alphabet.len();
            for o in 0..layer.n_out {
                let row: Vec<String> =
                    sw[o * n_sym..(o + 1) * n_sym].iter().map(|w| w.to_string()).collect();
                let _ = writeln!(out, "s {}", row.join(" "));
            }
        }
        let bias: Vec<String> = layer.bias.iter().map(|b| b.to_string()).collect();
        let _ = writeln!(out, "bias {}", bias.join(" "));
    }
    out
}

pub fn parse_tnet(text: &str) -> Result<ThresholdNet> {
    let mut cur = LineCursor::new(text);
    let (line, header) = cur.next_fields().ok_or_else(|| perr(0, "empty file"))?;
    if header != ["tnet", "v1"] {
        return Err(perr(line, "expected `tnet v1` header"));
    }
    let (line, method_fields) = cur.expect("method")?;
    let method: &'static str = match method_fields.get(1) {
        Some(&"dewdney") => "dewdney",
        Some(&"indyk") => "indyk",
        _ => return Err(perr(line, "method must be dewdney or indyk")),
    };
    let (_, alpha) = cur.expect("alphabet")?;
    let alphabet = Alphabet::from_names(&alpha[1..])?;
    let (line, states_fields) = cur.expect("states")?;
    let n_states: usize = states_fields
        .get(1)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(line, "bad state count"))?;
    let (line, code_fields) = cur.expect("code")?;
    let code = match code_fields.get(1) {
        Some(&"dewdney") => {
            let s: usize = code_fields
                .get(2)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| perr(line, "bad code parameter"))?;
            let c = TwoHotCode::new(n_states);
            if c.s != s {
                return Err(perr(line, "code parameter does not match the state count"));
            }
            NetCode::TwoHot(c)
        }
        Some(&"indyk") => {
            let perm = code_fields
                .get(3..)
                .unwrap_or(&[])
                .iter()
                .map(|t| t.parse().map_err(|_| perr(line, "bad permutation entry")))
                .collect::<Result<Vec<usize>>>()?;
            NetCode::FourHot(FourHotCode::new(n_states, perm)?)
        }
        _ => return Err(perr(line, "code must be dewdney or indyk")),
    };
    let (line, init_fields) = cur.expect("init")?;
    let init_state: usize = init_fields
        .get(1)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(line, "bad init state"))?;
    let (line, final_fields) = cur.expect("finals")?;
    let mut finals = vec![false; n_states];
    for tok in &final_fields[1..] {
        let q: usize = tok.parse().map_err(|_| perr(line, "bad final state"))?;
        if q >= n_states {
            return Err(perr(line, "final state out of range"));
        }
        finals[q] = true;
    }
    let (line, layers_fields) = cur.expect("layers")?;
    let n_layers: usize = layers_fields
        .get(1)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(line, "bad layer count"))?;

    let n_sym = alphabet.len();
    let mut layers = Vec::with_capacity(n_layers);
    for _ in 0..n_layers {
        let (line, l_fields) = cur.expect("layer")?;
        if l_fields.len() != 4 {
            return Err(perr(line, "layer takes out, in, sym|nosym"));
        }
        let n_out: usize = l_fields[1].parse().map_err(|_| perr(line, "bad out width"))?;
        let n_in: usize = l_fields[2].parse().map_err(|_| perr(line, "bad in width"))?;
        let with_sym = match l_fields[3] {
            "sym" => true,
            "nosym" => false,
            _ => return Err(perr(line, "expected sym or nosym")),
        };
        let mut layer = Sublayer::zeros(n_in, n_out, with_sym, n_sym);
        let mut read_int_rows = |key: &str, rows: usize, cols: usize| -> Result<Vec<i64>> {
            let mut out = Vec::with_capacity(rows * cols);
            for _ in 0..rows {
                let (line, fields) =
                    cur.next_fields().ok_or_else(|| perr(0, format!("truncated `{key}` row")))?;
                if fields[0] != key || fields.len() != cols + 1 {
                    return Err(perr(line, format!("expected `{key}` row with {cols} values")));
                }
                for tok in &fields[1..] {
                    out.push(tok.parse().map_err(|_| perr(line, "bad integer"))?);
                }
            }
            Ok(out)
        };
        layer.weights = read_int_rows("w", n_out, n_in)?;
        if with_sym {
            layer.sym_weights = Some(read_int_rows("s", n_out, n_sym)?);
        }
        layer.bias = read_int_rows("bias", 1, n_out)?;
        layers.push(layer);
    }
    if let Some((line, fields)) = cur.next_fields() {
        return Err(perr(line, format!("unexpected trailing `{}`", fields[0])));
    }

    Ok(ThresholdNet { alphabet, n_states, code, layers, init_state, finals, method })
}

// ---------------------------------------------------------------------------
// Sniffing
// ---------------------------------------------------------------------------

/// Any of the three on-disk model kinds.
pub enum ModelFile {
    Fsa(Wfsa),
    Hrnn(HrnnLm),
    Tnet(Box<ThresholdNet>),
}

/// Dispatch on the header token: `hrnn` / `tnet` files declare themselves,
/// anything else parses as an automaton.
pub fn parse_model(text: &str) -> Result<ModelFile> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .find(|l| !l.trim().is_empty())
        .unwrap_or("");
    match first.split_whitespace().next() {
        Some("hrnn") => Ok(ModelFile::Hrnn(parse_hrnn(text)?)),
        Some("tnet") => Ok(ModelFile::Tnet(Box::new(parse_tnet(text)?))),
        _ => Ok(ModelFile::Fsa(parse_fsa(text)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compress::{build_dewdney, build_indyk};
    use crate::minsky::build_minsky;
    use crate::wfsa::{example_fslm, gen_random_complete_fsa, gen_random_dpfsa};

    #[test]
    fn fsa_round_trip_fixture() {
        let a = example_fslm();
        let text = print_fsa(&a);
        let b = parse_fsa(&text).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fsa_round_trip_random() {
        for seed in 0..10u64 {
            let a = gen_random_dpfsa(seed, 1 + (seed as usize % 6), 1 + (seed as usize % 4));
            let b = parse_fsa(&print_fsa(&a)).unwrap();
            assert_eq!(a, b, "seed {seed}");
        }
    }

    #[test]
    fn fsa_parses_unweighted_and_comments() {
        let text = "\
# a tiny acceptor
@init 0
0 1 x
1 0 y
1
";
        let a = parse_fsa(text).unwrap();
        assert_eq!(a.n_states(), 2);
        assert_eq!(a.initial_weight(0), 1.0);
        assert_eq!(a.final_weight(1), 1.0);
        assert_eq!(a.transitions().len(), 2);
        assert!(a.transitions().iter().all(|t| t.weight == 1.0));
        // Symbols interned in file order.
        assert_eq!(a.alphabet().names(), &["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn fsa_rejects_garbage() {
        assert!(parse_fsa("0 1 a b c d").is_err());
        assert!(parse_fsa("0 1 a notanumber").is_err());
        assert!(parse_fsa("@states 1\n0 5 a 1.0").is_err());
        assert!(parse_fsa("0 1 a inf").is_err());
    }

    #[test]
    fn hrnn_round_trip_both_projections() {
        let a = example_fslm();
        for proj in [Projection::SoftmaxExt, Projection::Sparsemax] {
            let lm = build_minsky(&a, proj).unwrap();
            let text = print_hrnn(&lm);
            let back = parse_hrnn(&text).unwrap();
            assert_eq!(lm, back);
        }
    }

    #[test]
    fn hrnn_rejects_bad_tokens() {
        let a = example_fslm();
        let lm = build_minsky(&a, Projection::SoftmaxExt).unwrap();
        let good = print_hrnn(&lm);
        // -inf outside E
        let bad = good.replacen("b\n-1 -1", "b\n-inf -1", 1);
        assert!(parse_hrnn(&bad).is_err());
        // +inf anywhere
        let bad = good.replace("-inf", "inf");
        assert!(parse_hrnn(&bad).is_err());
        let bad = good.replacen("hrnn v1", "hrnn v2", 1);
        assert!(parse_hrnn(&bad).is_err());
    }

    #[test]
    fn tnet_round_trip() {
        let a = gen_random_complete_fsa(4, 6, 2);
        let net = build_dewdney(&a).unwrap();
        let back = parse_tnet(&print_tnet(&net)).unwrap();
        assert_eq!(net, back);

        let net = build_indyk(&a, 9, 4).unwrap();
        let back = parse_tnet(&print_tnet(&net)).unwrap();
        assert_eq!(net, back);
    }

    #[test]
    fn sniffing_dispatches() {
        let a = example_fslm();
        assert!(matches!(parse_model(&print_fsa(&a)), Ok(ModelFile::Fsa(_))));
        let lm = build_minsky(&a, Projection::SoftmaxExt).unwrap();
        assert!(matches!(parse_model(&print_hrnn(&lm)), Ok(ModelFile::Hrnn(_))));
        let f = gen_random_complete_fsa(1, 4, 2);
        let net = build_dewdney(&f).unwrap();
        assert!(matches!(parse_model(&print_tnet(&net)), Ok(ModelFile::Tnet(_))));
    }
}
