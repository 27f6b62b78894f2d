//! Commands behind the `toeprank` binary.
//!
//! Each command returns an [`Outcome`] instead of printing, so the binary is a
//! thin shell and the commands can be driven from tests.
//!
//! Pattern files are JSON:
//!
//! ```json
//! { "rows": ["r1", "r2"], "cols": ["c1", "c2"],
//!   "coefficients": [ { "index": 0, "nonzeros": [["r1", "c1"]] },
//!                     { "index": 1, "nonzeros": [["r1", "c2"], ["r2", "c1"]] } ] }
//! ```

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exact_rank::{max_rank_random, FieldSpec, DEFAULT_PROBE_PRIME};
use crate::lift::{check_proposition1, term_rank, witness, TermRank, Witness};
use crate::matching::{build_graph, max_matching, select_mu_for_lambda, DeltaCurve};
use crate::oracle;
use crate::pattern::{expand_toeplitz, index_parameters, LaurentPattern, ParamTriple};

pub const SCHEMA: &str = "toeprank/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Self { code: EXIT_INPUT, stderr: format!("error: {msg}\n"), ..Default::default() }
    }

    fn verify_error(msg: impl std::fmt::Display) -> Self {
        Self { code: EXIT_VERIFY, stderr: format!("verification failed: {msg}\n"), ..Default::default() }
    }

    /// Maps library errors: certificate failures are bugs (exit 3), anything
    /// else is bad input (exit 2).
    fn from_error(e: Error) -> Self {
        match e {
            Error::Certificate(_) => Self::verify_error(e),
            other => Self::input_error(other),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternFile {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub coefficients: Vec<CoefficientEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientEntry {
    pub index: usize,
    pub nonzeros: Vec<(String, String)>,
}

pub fn parse_pattern(text: &str) -> Result<LaurentPattern, Error> {
    let file: PatternFile = serde_json::from_str(text).map_err(|e| {
        Error::Input(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    LaurentPattern::new(
        file.rows,
        file.cols,
        file.coefficients.into_iter().map(|c| (c.index, c.nonzeros)),
    )
}

/// Canonical form: declared label order, coefficients by index, nonzeros by
/// position.
pub fn pattern_to_file(h: &LaurentPattern) -> PatternFile {
    PatternFile {
        rows: h.rows().to_vec(),
        cols: h.cols().to_vec(),
        coefficients: h
            .coefficients()
            .map(|(index, s)| CoefficientEntry {
                index,
                nonzeros: s
                    .nonzeros()
                    .iter()
                    .map(|&(r, c)| (h.rows()[r].clone(), h.cols()[c].clone()))
                    .collect(),
            })
            .collect(),
    }
}

pub fn pattern_to_json(h: &LaurentPattern) -> String {
    serde_json::to_string_pretty(&pattern_to_file(h)).expect("pattern serializes")
}

/// Parses `gf2`, `gfP:<q>` or `rational`.
pub fn parse_field(s: &str) -> Result<FieldSpec, Error> {
    let lower = s.to_ascii_lowercase();
    match lower.as_str() {
        "gf2" => Ok(FieldSpec::gf2()),
        "rational" | "q" => Ok(FieldSpec::Rational),
        _ => {
            let q = lower
                .strip_prefix("gfp:")
                .and_then(|q| q.parse::<u64>().ok())
                .ok_or_else(|| Error::Input(format!("unknown field `{s}`")))?;
            FieldSpec::prime(q)
        }
    }
}

fn load(path: &Path) -> Result<LaurentPattern, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::input_error(format!("{}: {e}", path.display())))?;
    parse_pattern(&text).map_err(|e| Outcome::input_error(format!("{}: {e}", path.display())))
}

fn beyond_warning(h: &LaurentPattern, k: usize) -> String {
    let beyond = h.coefficients_beyond(k);
    if beyond.is_empty() {
        String::new()
    } else {
        format!("warning: coefficients {beyond:?} have index >= k = {k}; they shape the weights but not T_k(H)\n")
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

struct Labels<'a>(&'a LaurentPattern);

impl Labels<'_> {
    fn row(&self, r: usize) -> &str {
        &self.0.rows()[r]
    }

    fn col(&self, c: usize) -> &str {
        &self.0.cols()[c]
    }

    fn triple(&self, t: &ParamTriple) -> Value {
        json!([t.index, self.row(t.row), self.col(t.col)])
    }

    fn triple_text(&self, t: &ParamTriple) -> String {
        format!("({}, {}, {})", t.index, self.row(t.row), self.col(t.col))
    }
}

fn certificate_json(h: &LaurentPattern, tr: &TermRank, w: &Witness) -> Value {
    let l = Labels(h);
    let c = &tr.certificate;
    let y: serde_json::Map<String, Value> = c
        .source_dual
        .y
        .iter()
        .enumerate()
        .map(|(r, &v)| (l.row(r).to_string(), json!(v)))
        .collect();
    let z: serde_json::Map<String, Value> = c
        .source_dual
        .z
        .iter()
        .enumerate()
        .map(|(col, &v)| (l.col(col).to_string(), json!(v)))
        .collect();
    json!({
        "schema": SCHEMA,
        "k": c.k,
        "term_rank": tr.value,
        "mu": c.mu,
        "lambda": c.source_dual.lambda,
        "mu_hat": tr.curve.mu_hat,
        "delta": tr.curve.delta,
        "xi": c.xi,
        "source": {
            "matching": c.source_matching.edges().iter().map(|&(r, col)| json!([l.row(r), l.col(col)])).collect::<Vec<_>>(),
            "weight": c.source_weight,
            "y": y,
            "z": z,
        },
        "lifted_matching": c.lifted_matching.iter()
            .map(|&((i, r), (j, col))| json!([[i, l.row(r)], [j, l.col(col)]]))
            .collect::<Vec<_>>(),
        "cover": {
            "rows": c.cover_rows.iter().map(|&(i, r)| json!([i, l.row(r)])).collect::<Vec<_>>(),
            "cols": c.cover_cols.iter().map(|&(j, col)| json!([j, l.col(col)])).collect::<Vec<_>>(),
        },
        "witness": w.ones().map(|t| l.triple(t)).collect::<Vec<_>>(),
    })
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn delta_lines(curve: &DeltaCurve) -> String {
    let mut out = format!("δ = {}\n", join(&curve.delta));
    if curve.mu_hat > 0 {
        let _ = writeln!(out, "slopes = {}", join(&curve.slopes()));
    }
    out
}

pub fn cmd_term_rank(path: &Path, k: usize, as_json: bool) -> Outcome {
    let h = match load(path) {
        Ok(h) => h,
        Err(o) => return o,
    };
    if k == 0 {
        return Outcome::from_error(Error::ZeroBlocks);
    }
    let w = match witness(&h, k) {
        Ok(w) => w,
        Err(e) => return Outcome::from_error(e),
    };
    let tr = &w.term_rank;
    let stdout = if as_json {
        let mut doc = certificate_json(&h, tr, &w);
        doc["command"] = json!("term-rank");
        render(&doc)
    } else {
        let mut s = format!("term_rank = {}\n", tr.value);
        let _ = writeln!(
            s,
            "k = {k}, mu* = {}, lambda = {}, mu_hat = {}",
            tr.certificate.mu, tr.certificate.source_dual.lambda, tr.curve.mu_hat
        );
        s.push_str(&delta_lines(&tr.curve));
        s
    };
    Outcome { code: EXIT_OK, stdout, stderr: beyond_warning(&h, k) }
}

pub fn cmd_witness(path: &Path, k: usize, field: FieldSpec, as_json: bool) -> Outcome {
    let h = match load(path) {
        Ok(h) => h,
        Err(o) => return o,
    };
    if k == 0 {
        return Outcome::from_error(Error::ZeroBlocks);
    }
    let w = match witness(&h, k) {
        Ok(w) => w,
        Err(e) => return Outcome::from_error(e),
    };
    let m = match w.evaluate(&h, field) {
        Ok(m) => m,
        Err(e) => return Outcome::from_error(e),
    };
    let rank = m.rank();
    if rank != w.term_rank.value || m.nnz() != rank {
        return Outcome::verify_error(format!(
            "rank over {field} is {rank} with {} nonzeros, term rank is {}",
            m.nnz(),
            w.term_rank.value
        ));
    }
    let l = Labels(&h);
    let (n, ncols) = (h.nrows(), h.ncols());
    let cell = |flat_r: usize, flat_c: usize| {
        ((flat_r / n + 1, l.row(flat_r % n)), (flat_c / ncols + 1, l.col(flat_c % ncols)))
    };
    let stdout = if as_json {
        let mut doc = certificate_json(&h, &w.term_rank, &w);
        doc["command"] = json!("witness");
        doc["field"] = json!(field.to_string());
        doc["rank"] = json!(rank);
        doc["support"] = m
            .support()
            .map(|(a, b)| {
                let ((i, r), (j, c)) = cell(a, b);
                json!([[i, r], [j, c]])
            })
            .collect();
        render(&doc)
    } else {
        let mut s = String::from("parameters set to 1:\n");
        for t in w.ones() {
            let _ = writeln!(s, "  {}", l.triple_text(t));
        }
        let _ = writeln!(s, "evaluated support over {field}:");
        for (a, b) in m.support() {
            let ((i, r), (j, c)) = cell(a, b);
            let _ = writeln!(s, "  ({i}, {r}) x ({j}, {c})");
        }
        let _ = writeln!(s, "rank = {rank} = term_rank ✓");
        s
    };
    Outcome { code: EXIT_OK, stdout, stderr: beyond_warning(&h, k) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    /// Tamper with the lifted cover before re-checking it. Test hook.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 0, trials: 10, inject_fault: false }
    }
}

pub fn cmd_verify(path: &Path, k: usize, opts: VerifyOptions) -> Outcome {
    let h = match load(path) {
        Ok(h) => h,
        Err(o) => return o,
    };
    if k == 0 {
        return Outcome::from_error(Error::ZeroBlocks);
    }
    match verify_report(&h, k, opts) {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: beyond_warning(&h, k) },
        Err((partial, e)) => {
            let mut o = Outcome::from_error(e);
            o.stdout = partial;
            o
        }
    }
}

fn verify_report(h: &LaurentPattern, k: usize, opts: VerifyOptions) -> Result<String, (String, Error)> {
    let mut out = String::new();
    let fail = |out: &String, msg: String| (out.clone(), Error::Certificate(msg));
    let pass = |out: &mut String, what: &str| {
        let _ = writeln!(out, "PASS  {what}");
    };

    let g = build_graph(h);
    let (m, cover) = max_matching(&g);
    m.check(&g).and_then(|_| cover.check(&g)).map_err(|e| (out.clone(), e))?;
    if m.len() as i64 != cover.value() {
        return Err(fail(&out, format!("matching {} != cover {}", m.len(), cover.value())));
    }
    pass(&mut out, &format!("matching/cover duality on G(H): {} = {}", m.len(), cover.value()));

    let mut tr = term_rank(h, k).map_err(|e| (out.clone(), e))?;
    tr.curve.verify(&g).map_err(|e| (out.clone(), e))?;
    if tr.curve.mu_hat != m.len() {
        return Err(fail(&out, format!("delta curve ends at {} but mu_hat = {}", tr.curve.mu_hat, m.len())));
    }
    pass(&mut out, "delta curve: primal = dual at every mu, concave, nonincreasing");
    let (mu, lambda) = select_mu_for_lambda(&tr.curve, k);
    pass(&mut out, &format!("selected mu* = {mu} at lambda = {lambda}"));

    if opts.inject_fault {
        tr.certificate.cover_rows.clear();
        tr.certificate.cover_cols.clear();
    }
    let report = check_proposition1(h, &tr.certificate).map_err(|e| (out.clone(), e))?;
    if let Some(f) = report.failure() {
        return Err(fail(&out, f));
    }
    pass(
        &mut out,
        &format!(
            "lift: |X'| = {} = cover size = delta(mu*) + k mu*",
            tr.certificate.lifted_matching.len()
        ),
    );

    let w = witness(h, k).map_err(|e| (out.clone(), e))?;
    for field in [FieldSpec::gf2(), FieldSpec::Prime(DEFAULT_PROBE_PRIME), FieldSpec::Rational] {
        let em = w.evaluate(h, field).map_err(|e| (out.clone(), e))?;
        if em.rank() != tr.value || em.nnz() != tr.value {
            return Err(fail(&out, format!("witness rank over {field} is {}", em.rank())));
        }
    }
    pass(&mut out, &format!("witness rank = {} over GF(2), GF({DEFAULT_PROBE_PRIME}), Q", tr.value));

    let probed = max_rank_random(h, k, FieldSpec::Prime(DEFAULT_PROBE_PRIME), opts.trials, opts.seed)
        .map_err(|e| (out.clone(), e))?;
    if probed > tr.value {
        return Err(fail(&out, format!("random probe found rank {probed} > term rank {}", tr.value)));
    }
    pass(
        &mut out,
        &format!("random probe ({} trials, seed {}): rank {probed} <= {}", opts.trials, opts.seed, tr.value),
    );

    let q = index_parameters(h, k).map_err(|e| (out.clone(), e))?.q();
    if q <= oracle::MAX_EXHAUSTIVE_PARAMS && g.edge_count() <= oracle::MAX_BRUTE_EDGES {
        let direct = oracle::term_rank_direct(&expand_toeplitz(h, k).map_err(|e| (out.clone(), e))?);
        let exhaustive = oracle::max_rank_exhaustive_gf2(h, k).map_err(|e| (out.clone(), e))?;
        let closed = oracle::term_rank_closed_form(&g, k);
        if direct != tr.value || exhaustive != tr.value || closed != tr.value as i64 {
            return Err(fail(
                &out,
                format!("oracles disagree: direct {direct}, exhaustive {exhaustive}, closed form {closed}, certified {}", tr.value),
            ));
        }
        for (mu, &d) in tr.curve.delta.iter().enumerate() {
            let brute = oracle::assignment_brute(&g, mu).map_err(|e| (out.clone(), e))?;
            if brute != Some(d) {
                return Err(fail(&out, format!("delta({mu}) = {d}, brute force gives {brute:?}")));
            }
        }
        if oracle::assignment_brute(&g, tr.curve.mu_hat + 1).map_err(|e| (out.clone(), e))?.is_some() {
            return Err(fail(&out, "a matching larger than mu_hat exists".into()));
        }
        pass(&mut out, "oracles: direct matching, GF(2) sweep, closed form and brute-force delta agree");
    } else {
        let _ = writeln!(
            out,
            "SKIP  oracles (q = {q}, |E| = {}; limits {} and {}): certificate checks only",
            g.edge_count(),
            oracle::MAX_EXHAUSTIVE_PARAMS,
            oracle::MAX_BRUTE_EDGES
        );
    }
    let _ = writeln!(out, "term_rank = {}", tr.value);
    Ok(out)
}

pub fn cmd_delta(path: &Path, k: Option<usize>) -> Outcome {
    let h = match load(path) {
        Ok(h) => h,
        Err(o) => return o,
    };
    let g = build_graph(&h);
    let curve = crate::matching::delta_curve(&g);
    if let Err(e) = curve.verify(&g) {
        return Outcome::from_error(e);
    }
    let mut stdout = format!("mu_hat = {}\n", curve.mu_hat);
    stdout.push_str(&delta_lines(&curve));
    match k {
        Some(0) => return Outcome::from_error(Error::ZeroBlocks),
        Some(k) => {
            let (mu, lambda) = select_mu_for_lambda(&curve, k);
            let _ = writeln!(stdout, "μ* = {mu} at λ = {lambda}");
            let _ = writeln!(stdout, "term_rank = {}", curve.delta[mu] + k as i64 * mu as i64);
        }
        None => {}
    }
    Outcome { code: EXIT_OK, stdout, stderr: String::new() }
}

pub fn cmd_probe(path: &Path, k: usize, field: FieldSpec, trials: usize, seed: u64) -> Outcome {
    let h = match load(path) {
        Ok(h) => h,
        Err(o) => return o,
    };
    let probed = match max_rank_random(&h, k, field, trials, seed) {
        Ok(r) => r,
        Err(e) => return Outcome::from_error(e),
    };
    let tr = match term_rank(&h, k) {
        Ok(t) => t,
        Err(e) => return Outcome::from_error(e),
    };
    if probed > tr.value {
        return Outcome::verify_error(format!("probe rank {probed} exceeds term rank {}", tr.value));
    }
    Outcome {
        code: EXIT_OK,
        stdout: format!(
            "max random rank over {field} ({trials} trials, seed {seed}) = {probed}\nterm_rank = {}\n",
            tr.value
        ),
        stderr: beyond_warning(&h, k),
    }
}
