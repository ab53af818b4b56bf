//! Matroid of a point, Gale order, the lowering procedure, boundary cell
//! identification and sampling, and the census of cells meeting the skew
//! chart.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::group::{deodhar_point, ChartPoint};
use crate::weyl::{
    bruhat_leq, coset_word_from_subset, enumerate_parabolic, min_coset_rep, parse_window,
    SignedPerm,
};

/// Rank in the diagram order 1 < 2 < ... < n < 2n < 2n-1 < ... < n+1.
fn gale_rank(n: usize, v: usize) -> usize {
    if v <= n {
        v
    } else {
        3 * n + 1 - v
    }
}

/// Bases of the rank-n matroid of a point, each sorted by label.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisSet {
    n: usize,
    bases: Vec<Vec<usize>>,
}

impl BasisSet {
    pub fn new(n: usize, mut bases: Vec<Vec<usize>>) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::Internal("matroid with no bases".into()));
        }
        for b in &bases {
            if b.len() != n || b.windows(2).any(|p| p[0] >= p[1]) {
                return Err(Error::IndexRange("bases must be increasing n-subsets".into()));
            }
        }
        bases.sort();
        bases.dedup();
        Ok(BasisSet { n, bases })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    pub fn contains(&self, basis: &[usize]) -> bool {
        self.bases.iter().any(|b| b.as_slice() == basis)
    }

    /// Sorted rank vector in the diagram order.
    fn rank_vector(&self, basis: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = basis.iter().map(|&x| gale_rank(self.n, x)).collect();
        v.sort();
        v
    }

    fn gale_leq(&self, a: &[usize], b: &[usize]) -> bool {
        self.rank_vector(a)
            .iter()
            .zip(self.rank_vector(b))
            .all(|(x, y)| *x <= y)
    }
}

/// All column sets with nonvanishing maximal minor, computed exactly.
/// Guarded; pass `allow_large` to lift the rank cap.
pub fn matroid_of(point: &ChartPoint<Rat>, allow_large: bool) -> Result<BasisSet> {
    let n = point.rank();
    if n > 7 && !allow_large {
        return Err(Error::GuardExceeded { n, limit: 7 });
    }
    let mut bases = Vec::new();
    let mut subset: Vec<usize> = Vec::new();
    collect_bases(point, 1, &mut subset, &mut bases)?;
    BasisSet::new(n, bases)
}

fn collect_bases(
    point: &ChartPoint<Rat>,
    start: usize,
    subset: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let n = point.rank();
    if subset.len() == n {
        if !point.plucker(subset)?.is_zero() {
            out.push(subset.clone());
        }
        return Ok(());
    }
    for v in start..=2 * n {
        if 2 * n - v + 1 < n - subset.len() {
            break;
        }
        subset.push(v);
        collect_bases(point, v + 1, subset, out)?;
        subset.pop();
    }
    Ok(())
}

/// The unique Gale-maximal basis, returned sorted by the diagram order.
pub fn gale_max(b: &BasisSet) -> Result<Vec<usize>> {
    let candidate = b
        .bases
        .iter()
        .max_by(|x, y| b.rank_vector(x).cmp(&b.rank_vector(y)))
        .expect("basis set is nonempty");
    for other in &b.bases {
        if !b.gale_leq(other, candidate) {
            return Err(Error::Internal(format!(
                "no Gale-maximal basis dominates {other:?}"
            )));
        }
    }
    let mut sorted = candidate.clone();
    sorted.sort_by_key(|&v| gale_rank(b.n, v));
    Ok(sorted)
}

/// The lowering chain of a basis: the j-th step replaces the j-th smallest
/// element (diagram order) by the least element keeping a basis. Returns
/// the n + 1 bases, each sorted by the diagram order.
pub fn lowerings(b: &BasisSet, basis: &[usize]) -> Result<Vec<Vec<usize>>> {
    let mut by_label = basis.to_vec();
    by_label.sort();
    if !b.contains(&by_label) {
        return Err(Error::IndexRange(format!("{basis:?} is not a basis")));
    }
    let n = b.n;
    let mut current: Vec<usize> = basis.to_vec();
    current.sort_by_key(|&v| gale_rank(n, v));
    let mut chain = vec![current.clone()];
    for j in 0..n {
        let removed = current[j];
        let replacement = (1..=2 * n)
            .filter(|&t| t == removed || !current.contains(&t))
            .filter(|&t| {
                let mut candidate: Vec<usize> = current
                    .iter()
                    .copied()
                    .map(|v| if v == removed { t } else { v })
                    .collect();
                candidate.sort();
                b.contains(&candidate)
            })
            .min_by_key(|&t| gale_rank(n, t))
            .expect("the basis itself always qualifies");
        current[j] = replacement;
        current.sort_by_key(|&v| gale_rank(n, v));
        chain.push(current.clone());
    }
    Ok(chain)
}

/// Label of a boundary cell: v and the minimal coset representative w.
/// Printed as "v_window;w_window" where both components list the sequences
/// read off the matroid (the lowering replacements and the Gale-maximal
/// column sequence), which are the windows of the inverses of the stored
/// elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CellLabel {
    v: SignedPerm,
    w: SignedPerm,
}

impl CellLabel {
    pub fn new(v: SignedPerm, w: SignedPerm) -> Result<Self> {
        if min_coset_rep(&w) != w {
            return Err(Error::InvalidCellLabel(format!(
                "{} is not a minimal coset representative",
                w.inverse().window_string()
            )));
        }
        if !bruhat_leq(&v, &w) {
            return Err(Error::NotBruhatBelow {
                v: v.window_string(),
                w: w.inverse().window_string(),
            });
        }
        Ok(CellLabel { v, w })
    }

    pub fn v(&self) -> &SignedPerm {
        &self.v
    }

    pub fn w(&self) -> &SignedPerm {
        &self.w
    }

    /// Free parameter count of the cell.
    pub fn dimension(&self) -> usize {
        self.w.length() - self.v.length()
    }

    /// Parses "v_window;w_window" with both parts given as the printed
    /// matroid sequences, the windows of the inverses.
    pub fn parse(n: usize, s: &str) -> Result<CellLabel> {
        let (vs, ws) = s
            .split_once(';')
            .ok_or_else(|| Error::InvalidCellLabel(format!("expected 'v;w' in {s:?}")))?;
        let v_inv = SignedPerm::from_window(n, &parse_window(vs)?)?;
        let w_inv = SignedPerm::from_window(n, &parse_window(ws)?)?;
        CellLabel::new(v_inv.inverse(), w_inv.inverse())
    }
}

impl std::fmt::Display for CellLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{};{}",
            self.v.inverse().window_string(),
            self.w.inverse().window_string()
        )
    }
}

/// Identifies the boundary cell containing a chart point from its matroid:
/// w from the Gale-maximal basis (completed through the defining
/// congruence), v from the lowering replacements.
pub fn identify_cell(point: &ChartPoint<Rat>, allow_large: bool) -> Result<CellLabel> {
    let n = point.rank();
    let matroid = matroid_of(point, allow_large)?;
    let top = gale_max(&matroid)?;
    let w_inv = SignedPerm::from_window(n, &top).map_err(|e| {
        Error::NotNonnegativePoint(format!("Gale-maximal basis {top:?} is not a window: {e}"))
    })?;
    let w = w_inv.inverse();
    let chain = lowerings(&matroid, &top)?;
    let mut replacements = Vec::with_capacity(n);
    for j in 0..n {
        // The j-th lowering changes only the j-th element in diagram order.
        let step: Vec<usize> = chain[j + 1]
            .iter()
            .copied()
            .filter(|t| !chain[j].contains(t))
            .collect();
        let t_j = match step.as_slice() {
            [] => chain[j][j],
            [t] => *t,
            _ => {
                return Err(Error::Internal(
                    "lowering changed more than one element".into(),
                ))
            }
        };
        replacements.push(t_j);
    }
    // The replacement sequence is the window of the inverse of the cell's v,
    // matching the column-sequence reading of w.
    let v = SignedPerm::from_window(n, &replacements)
        .map_err(|e| {
            Error::NotNonnegativePoint(format!(
                "lowering replacements {replacements:?} are not a window: {e}"
            ))
        })?
        .inverse();
    if min_coset_rep(&w) != w || !bruhat_leq(&v, &w) {
        return Err(Error::NotNonnegativePoint(format!(
            "computed pair {};{} fails the cell invariants",
            v.inverse().window_string(),
            w_inv.window_string()
        )));
    }
    CellLabel::new(v, w)
}

/// Samples a point of the cell with the given positive parameters. The
/// result lies in the skew chart exactly when v fixes [n] setwise.
pub fn sample_cell(label: &CellLabel, params: &[Rat]) -> Result<ChartPoint<Rat>> {
    deodhar_point(&label.v, &label.w, params)
}

/// All cell labels meeting the skew chart: w ranges over minimal coset
/// representatives, v over the type-A parabolic below w.
pub fn cells_in_chart(n: usize) -> Result<Vec<CellLabel>> {
    if n > 6 {
        return Err(Error::GuardExceeded { n, limit: 6 });
    }
    let mut labels = Vec::new();
    let parabolic = enumerate_parabolic(n, 6)?;
    let mut subsets: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|bits| (1..=n).filter(|&i| bits >> (i - 1) & 1 == 1).collect())
        .filter(|s: &Vec<usize>| s.len() % 2 == 0)
        .collect();
    subsets.sort();
    for subset in subsets {
        let w = coset_word_from_subset(n, &subset)?.product(n)?;
        let mut vs: Vec<&SignedPerm> = parabolic.iter().filter(|v| bruhat_leq(v, &w)).collect();
        vs.sort_by_key(|v| v.window());
        for v in vs {
            labels.push(CellLabel::new(v.clone(), w.clone())?);
        }
    }
    Ok(labels)
}
