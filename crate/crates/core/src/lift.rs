//! Lifting assignment certificates on `G(H)` to matching certificates on
//! `G(T_k(H))`, and the 0/1 rank witness built from them.
//!
//! A matched edge of weight `-d` becomes the `k - d` entries
//! `((j + d, r), (j, c))` of the expanded pattern. A row dual `y_r` becomes
//! the top `y_r + λ + k` levels of row `r` (all levels `i >= 1 - y_r - λ`),
//! and a column dual `z_c` becomes the bottom `z_c` levels of column `c`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_rank::FieldSpec;
use crate::matching::{
    build_graph, canonical_matching, delta_curve, dual_for_fixed_lambda, select_mu_for_lambda, AssignmentDual,
    DeltaCurve, Matching,
};
use crate::pattern::{evaluate, expand_toeplitz, index_parameters, BlockVertex, LaurentPattern, ParamTriple, ToeplitzPattern};

pub type LiftedEdge = (BlockVertex, BlockVertex);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftCertificate {
    pub k: usize,
    pub mu: usize,
    /// `|R|`
    pub block_rows: usize,
    pub source_matching: Matching,
    pub source_dual: AssignmentDual,
    /// `δ(μ) = Σ_X w`
    pub source_weight: i64,
    pub lifted_matching: BTreeSet<LiftedEdge>,
    /// Row vertices `(level, r)` with `y' = 1`.
    pub cover_rows: BTreeSet<BlockVertex>,
    /// Column vertices `(level, c)` with `z' = 1`.
    pub cover_cols: BTreeSet<BlockVertex>,
    /// `xi[d]` = number of matched edges of weight `-d`, for `d = 0..=k`.
    pub xi: Vec<usize>,
    pub term_rank: usize,
}

impl LiftCertificate {
    pub fn cover_size(&self) -> usize {
        self.cover_rows.len() + self.cover_cols.len()
    }
}

/// Applies the lift to `(x, dual)` and checks the result against the
/// expanded pattern.
pub fn lift(
    h: &LaurentPattern,
    k: usize,
    x: &Matching,
    dual: &AssignmentDual,
    mu: usize,
) -> Result<LiftCertificate> {
    let expanded = expand_toeplitz(h, k)?;
    let g = build_graph(h);
    x.check(&g)?;
    dual.check(&g)?;
    if x.len() != mu {
        return Err(Error::Certificate(format!("matching has {} edges, expected {mu}", x.len())));
    }
    let ki = k as i64;

    let mut lifted_matching = BTreeSet::new();
    let mut xi = vec![0usize; k + 1];
    for &(r, c) in x.edges() {
        let d = -g.weight(r, c).expect("checked above");
        if d <= ki {
            xi[d as usize] += 1;
        }
        let d = d as usize;
        for j in 1..=k.saturating_sub(d) {
            lifted_matching.insert(((j + d, r), (j, c)));
        }
    }
    let cover_rows = (0..h.nrows())
        .flat_map(|r| (1..=k).map(move |i| (i, r)))
        .filter(|&(i, r)| i as i64 >= 1 - dual.y[r] - dual.lambda)
        .collect();
    let cover_cols = (0..h.ncols())
        .flat_map(|c| (1..=k).map(move |j| (j, c)))
        .filter(|&(j, c)| dual.z[c] >= j as i64)
        .collect();

    let cert = LiftCertificate {
        k,
        mu,
        block_rows: h.nrows(),
        source_matching: x.clone(),
        source_dual: dual.clone(),
        source_weight: x.weight(&g),
        term_rank: lifted_matching.len(),
        lifted_matching,
        cover_rows,
        cover_cols,
        xi,
    };
    if let Some(v) = matching_violation(&cert, &expanded) {
        return Err(Error::Certificate(v));
    }
    if let Some(v) = cover_violation(&cert, &expanded) {
        return Err(Error::Certificate(v));
    }
    Ok(cert)
}

fn matching_violation(cert: &LiftCertificate, t: &ToeplitzPattern) -> Option<String> {
    let mut rows = BTreeSet::new();
    let mut cols = BTreeSet::new();
    for &(row, col) in &cert.lifted_matching {
        if !t.contains(row, col) {
            return Some(format!("lifted edge {row:?}-{col:?} is not in T_k(H)"));
        }
        if !rows.insert(row) {
            return Some(format!("row vertex {row:?} matched twice"));
        }
        if !cols.insert(col) {
            return Some(format!("column vertex {col:?} matched twice"));
        }
    }
    None
}

fn cover_violation(cert: &LiftCertificate, t: &ToeplitzPattern) -> Option<String> {
    t.nonzeros()
        .iter()
        .find(|(row, col)| !cert.cover_rows.contains(row) && !cert.cover_cols.contains(col))
        .map(|(row, col)| format!("expanded edge {row:?}-{col:?} is not covered"))
}

/// Outcome of checking a certificate against the admissibility and
/// optimality statements for the lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Proposition1Report {
    /// `None` when `X'` is a matching of `G(T_k(H))`, else the violation.
    pub matching_violation: Option<String>,
    /// `None` when `(y', z')` covers every edge of `G(T_k(H))`.
    pub cover_violation: Option<String>,
    /// `(μ = 0 ∨ λ >= -k) ∧ (μ = |R| ∨ λ = -k)`
    pub side_condition: bool,
    /// `|X'| = Σy' + Σz'`; only evaluated under the side condition.
    pub optimal: Option<bool>,
    /// `|X'| = δ(μ) + kμ`; only evaluated under the side condition.
    pub size_identity: Option<bool>,
    /// `Σy' + Σz' = δ(μ) + |R|(k + λ) - λμ`; only evaluated when `λ >= -k`.
    pub cover_identity: Option<bool>,
}

impl Proposition1Report {
    pub fn all_passed(&self) -> bool {
        self.matching_violation.is_none()
            && self.cover_violation.is_none()
            && self.side_condition
            && self.optimal == Some(true)
            && self.size_identity == Some(true)
            && self.cover_identity != Some(false)
    }

    /// First failed item, for diagnostics.
    pub fn failure(&self) -> Option<String> {
        if let Some(v) = &self.matching_violation {
            return Some(v.clone());
        }
        if let Some(v) = &self.cover_violation {
            return Some(v.clone());
        }
        if !self.side_condition {
            return Some("side condition on (mu, lambda) does not hold".into());
        }
        if self.optimal != Some(true) {
            return Some("|X'| differs from the cover size".into());
        }
        if self.size_identity != Some(true) {
            return Some("|X'| differs from delta(mu) + k mu".into());
        }
        if self.cover_identity == Some(false) {
            return Some("cover size differs from delta(mu) + |R|(k + lambda) - lambda mu".into());
        }
        None
    }
}

pub fn check_proposition1(h: &LaurentPattern, cert: &LiftCertificate) -> Result<Proposition1Report> {
    let t = expand_toeplitz(h, cert.k)?;
    let k = cert.k as i64;
    let mu = cert.mu as i64;
    let lambda = cert.source_dual.lambda;
    let side_condition = (mu == 0 || lambda >= -k) && (cert.mu == cert.block_rows || lambda == -k);
    let lifted = cert.lifted_matching.len() as i64;
    let cover = cert.cover_size() as i64;
    Ok(Proposition1Report {
        matching_violation: matching_violation(cert, &t),
        cover_violation: cover_violation(cert, &t),
        side_condition,
        optimal: side_condition.then_some(lifted == cover),
        size_identity: side_condition.then_some(lifted == cert.source_weight + k * mu),
        cover_identity: (lambda >= -k).then_some(
            cover == cert.source_weight + cert.block_rows as i64 * (k + lambda) - lambda * mu,
        ),
    })
}

/// Term rank of `T_k(H)` together with the certificates that prove it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermRank {
    pub value: usize,
    pub curve: DeltaCurve,
    pub certificate: LiftCertificate,
}

/// `rk_t T_k(H) = δ(μ*) + kμ*`, certified.
///
/// The returned certificate has passed [`check_proposition1`].
pub fn term_rank(h: &LaurentPattern, k: usize) -> Result<TermRank> {
    if k == 0 {
        return Err(Error::ZeroBlocks);
    }
    let g = build_graph(h);
    let curve = delta_curve(&g);
    curve.verify(&g)?;
    let (mu, lambda) = select_mu_for_lambda(&curve, k);
    let x = canonical_matching(&g, &curve, mu);
    let dual = dual_for_fixed_lambda(&g, mu, lambda, &x)?;
    let certificate = lift(h, k, &x, &dual, mu)?;
    let report = check_proposition1(h, &certificate)?;
    if let Some(f) = report.failure() {
        return Err(Error::Certificate(f));
    }
    let value = (curve.delta[mu] + k as i64 * mu as i64) as usize;
    debug_assert_eq!(value, certificate.term_rank);
    Ok(TermRank { value, curve, certificate })
}

/// A 0/1 parameter assignment whose evaluated Toeplitz matrix has rank equal
/// to the term rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub k: usize,
    /// Every indexed parameter with its 0/1 value.
    pub p01: BTreeMap<ParamTriple, u8>,
    pub rank: usize,
    pub term_rank: TermRank,
}

impl Witness {
    /// Parameters set to 1.
    pub fn ones(&self) -> impl Iterator<Item = &ParamTriple> {
        self.p01.iter().filter(|(_, &v)| v == 1).map(|(t, _)| t)
    }

    pub fn as_rationals(&self) -> BTreeMap<ParamTriple, num_rational::BigRational> {
        self.p01
            .iter()
            .map(|(&t, &v)| (t, num_rational::BigRational::from_integer(v.into())))
            .collect()
    }

    /// `T_k(H)(p)` over `field`, checked to have support exactly `X'`.
    pub fn evaluate(&self, h: &LaurentPattern, field: FieldSpec) -> Result<crate::exact_rank::FieldMatrix> {
        let m = evaluate(h, self.k, &self.as_rationals(), field)?;
        let (n, ncols) = (h.nrows(), h.ncols());
        let expected: BTreeSet<(usize, usize)> = self
            .term_rank
            .certificate
            .lifted_matching
            .iter()
            .map(|&((i, r), (j, c))| ((i - 1) * n + r, (j - 1) * ncols + c))
            .collect();
        let support: BTreeSet<(usize, usize)> = m.support().collect();
        if support != expected {
            return Err(Error::Certificate(format!(
                "witness support has {} entries, lifted matching has {}",
                support.len(),
                expected.len()
            )));
        }
        Ok(m)
    }
}

/// Builds the witness: `p_{i,r,c} = 1` iff `(r, c)` is matched and `w_{r,c} = -i`.
/// The rank is verified by exact elimination over GF(2).
pub fn witness(h: &LaurentPattern, k: usize) -> Result<Witness> {
    let tr = term_rank(h, k)?;
    let g = build_graph(h);
    let x = &tr.certificate.source_matching;
    let p01 = index_parameters(h, k)?
        .triples()
        .iter()
        .map(|t| {
            let on = x.contains(t.row, t.col) && g.weight(t.row, t.col) == Some(-(t.index as i64));
            (*t, u8::from(on))
        })
        .collect();
    let mut w = Witness { k, p01, rank: 0, term_rank: tr };
    let m = w.evaluate(h, FieldSpec::gf2())?;
    w.rank = m.rank();
    if w.rank != w.term_rank.value || m.nnz() != w.rank {
        return Err(Error::Certificate(format!(
            "witness rank {} (with {} nonzeros) != term rank {}",
            w.rank,
            m.nnz(),
            w.term_rank.value
        )));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex_a() -> LaurentPattern {
        LaurentPattern::from_positions(2, 2, [(0, vec![(0, 0)]), (1, vec![(0, 1), (1, 0)])])
            .unwrap()
    }

    fn ex_b() -> LaurentPattern {
        LaurentPattern::from_positions(
            2,
            2,
            [(0, vec![(0, 0), (0, 1), (1, 0), (1, 1)]), (1, vec![(0, 0), (1, 1)])],
        )
        .unwrap()
    }

    fn set<T: Ord + Clone>(items: &[T]) -> BTreeSet<T> {
        items.iter().cloned().collect()
    }

    #[test]
    fn lift_ex_a_full_matching() {
        let x = Matching::from_edges([(0, 1), (1, 0)]);
        let dual = AssignmentDual { y: vec![1, 0], z: vec![1, 0], lambda: -2 };
        let cert = lift(&ex_a(), 2, &x, &dual, 2).unwrap();
        assert_eq!(cert.lifted_matching, set(&[((2, 0), (1, 1)), ((2, 1), (1, 0))]));
        assert_eq!(cert.cover_rows, set(&[(2, 0)]));
        assert_eq!(cert.cover_cols, set(&[(1, 0)]));
        assert_eq!(cert.xi, vec![0, 2, 0]);
        assert_eq!(cert.cover_size(), 2);
        let report = check_proposition1(&ex_a(), &cert).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report.cover_identity, Some(true));
    }

    #[test]
    fn lift_ex_a_weight_zero_edge_replicates() {
        let x = Matching::from_edges([(0, 0)]);
        let g = build_graph(&ex_a());
        let dual = dual_for_fixed_lambda(&g, 1, -2, &x).unwrap();
        let cert = lift(&ex_a(), 2, &x, &dual, 1).unwrap();
        assert_eq!(cert.lifted_matching, set(&[((1, 0), (1, 0)), ((2, 0), (2, 0))]));
        assert_eq!(cert.term_rank, 2);
    }

    #[test]
    fn lift_empty_matching() {
        // λ = 0 covers every row level, which is admissible but not optimal
        let dual = AssignmentDual { y: vec![0, 0], z: vec![0, 0], lambda: 0 };
        let cert = lift(&ex_a(), 2, &Matching::default(), &dual, 0).unwrap();
        assert!(cert.lifted_matching.is_empty());
        assert_eq!(cert.cover_size(), 4);
        let report = check_proposition1(&ex_a(), &cert).unwrap();
        assert!(!report.side_condition);
        assert_eq!(report.optimal, None);

        let zero = LaurentPattern::from_positions(2, 2, Vec::<(usize, Vec<_>)>::new()).unwrap();
        let dual = AssignmentDual { y: vec![0, 0], z: vec![0, 0], lambda: -3 };
        let cert = lift(&zero, 3, &Matching::default(), &dual, 0).unwrap();
        assert!(cert.lifted_matching.is_empty());
        assert_eq!(cert.cover_size(), 0);
        let report = check_proposition1(&zero, &cert).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn edge_of_weight_minus_k_is_selected_but_not_lifted() {
        let h = LaurentPattern::from_positions(1, 1, [(3, vec![(0, 0)])]).unwrap();
        let tr = term_rank(&h, 3).unwrap();
        assert_eq!(tr.certificate.mu, 1);
        assert!(tr.certificate.lifted_matching.is_empty());
        assert_eq!(tr.certificate.xi, vec![0, 0, 0, 1]);
        assert_eq!(tr.value, 0);
    }

    #[test]
    fn perturbed_dual_is_rejected_with_named_edge() {
        let x = Matching::from_edges([(0, 1), (1, 0)]);
        let dual = AssignmentDual { y: vec![0, 0], z: vec![1, 0], lambda: -2 };
        let err = lift(&ex_a(), 2, &x, &dual, 2).unwrap_err();
        assert!(err.to_string().contains("(0, 0)"), "{err}");

        // bypass the source check: tamper with an accepted certificate
        let good = AssignmentDual { y: vec![1, 0], z: vec![1, 0], lambda: -2 };
        let mut cert = lift(&ex_a(), 2, &x, &good, 2).unwrap();
        cert.cover_rows.clear();
        let report = check_proposition1(&ex_a(), &cert).unwrap();
        assert!(!report.all_passed());
        assert!(report.cover_violation.unwrap().contains("(2, 0)"));
        assert_eq!(report.optimal, Some(false));
    }

    #[test]
    fn term_rank_examples() {
        assert_eq!(term_rank(&ex_a(), 2).unwrap().value, 2);
        let tb = term_rank(&ex_b(), 2).unwrap();
        assert_eq!(tb.value, 4);
        assert_eq!(tb.curve.delta, vec![0, 0, 0]);
        assert_eq!(tb.certificate.mu, 2);
        let zero = LaurentPattern::from_positions(3, 3, Vec::<(usize, Vec<_>)>::new()).unwrap();
        assert_eq!(term_rank(&zero, 5).unwrap().value, 0);
        assert_eq!(term_rank(&ex_a(), 0).unwrap_err(), Error::ZeroBlocks);
    }

    #[test]
    fn witness_examples() {
        let w = witness(&ex_a(), 2).unwrap();
        assert_eq!(w.rank, 2);
        let ones: Vec<_> = w.ones().copied().collect();
        assert_eq!(ones, vec![ParamTriple::new(1, 0, 1), ParamTriple::new(1, 1, 0)]);
        assert_eq!(w.p01[&ParamTriple::new(0, 0, 0)], 0);

        let w = witness(&ex_b(), 2).unwrap();
        assert_eq!(w.ones().count(), 2);
        assert!(w.ones().all(|t| t.index == 0));
        for f in [FieldSpec::gf2(), FieldSpec::Prime(65521), FieldSpec::Rational] {
            let m = w.evaluate(&ex_b(), f).unwrap();
            assert_eq!((m.nnz(), m.rank()), (4, 4));
        }

        let zero = LaurentPattern::from_positions(2, 2, Vec::<(usize, Vec<_>)>::new()).unwrap();
        let w = witness(&zero, 3).unwrap();
        assert!(w.p01.is_empty());
        assert_eq!(w.rank, 0);
    }

    #[test]
    fn distant_coefficients_do_not_lift() {
        // H_0 = 0, H_3 = [1]: the only edge has weight -3 and T_2(H) is empty
        let h = LaurentPattern::from_positions(1, 1, [(3, vec![(0, 0)])]).unwrap();
        let tr = term_rank(&h, 2).unwrap();
        assert_eq!(tr.value, 0);
        assert_eq!(term_rank(&h, 4).unwrap().value, 1);
        assert_eq!(term_rank(&h, 6).unwrap().value, 3);
    }
}
