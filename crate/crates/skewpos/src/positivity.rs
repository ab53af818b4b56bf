//! The signed corner minors, the minimal positivity test, parameter
//! recovery, matrix reconstruction from the minor table, and the
//! perturbation-based nonnegativity test.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Poly, Rat};
use crate::group::{z_family, ChartPoint};
use crate::lgv;

/// Exact n x n skew-symmetric matrix, the chart coordinate of the
/// orthogonal Grassmannian.
#[derive(Clone, PartialEq, Debug)]
pub struct SkewMatrix {
    n: usize,
    mat: Matrix<Rat>,
}

impl SkewMatrix {
    pub fn new(mat: Matrix<Rat>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        for i in 0..mat.nrows() {
            for j in i..mat.ncols() {
                if mat.get(i, j) != &(-mat.get(j, i)) {
                    return Err(Error::NotSkew { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(SkewMatrix {
            n: mat.nrows(),
            mat,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        SkewMatrix::new(Matrix::from_rows(rows)?)
    }

    pub fn zero(n: usize) -> Self {
        SkewMatrix {
            n,
            mat: Matrix::zero(n, n),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// 1-based entry access.
    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        self.mat.get(i - 1, j - 1)
    }

    pub fn matrix(&self) -> &Matrix<Rat> {
        &self.mat
    }
}

/// Row and column sets of the signed minor: rows skip the interval
/// n-k .. n-k+j-1, columns are the first n-j.
fn m_minor_rows_cols(n: usize, j: usize, k: usize) -> (Vec<usize>, Vec<usize>) {
    let mut rows: Vec<usize> = (1..=n - k - 1).collect();
    rows.extend(n - k + j..=n);
    let cols: Vec<usize> = (1..=n - j).collect();
    (rows, cols)
}

/// Column set of the corresponding maximal minor of the point matrix:
/// {n-k, .., n-k+j-1} followed by {n+1, .., 2n-j}.
pub fn m_sink_set(n: usize, j: usize, k: usize) -> Vec<usize> {
    let mut cols: Vec<usize> = (n - k..=n - k + j - 1).collect();
    cols.extend(n + 1..=2 * n - j);
    cols
}

/// The signed minor M_{j,k}(A) = (-1)^{jk} times the minor of A in the
/// stated rows and columns, for 1 <= j <= k <= n-1.
pub fn m_minor(a: &SkewMatrix, j: usize, k: usize) -> Result<Rat> {
    let n = a.rank();
    if j == 0 || k == 0 || j > k || k > n - 1 {
        return Err(Error::IndexRange(format!(
            "need 1 <= j <= k <= {}, got ({j},{k})",
            n - 1
        )));
    }
    let (rows, cols) = m_minor_rows_cols(n, j, k);
    let minor = a.matrix().minor(&rows, &cols)?;
    Ok(if (j * k) % 2 == 0 { minor } else { -minor })
}

/// The index pairs (j,k) in reverse lexicographic order: k ascending,
/// then j ascending within each k.
pub fn minor_index_order(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for k in 1..n {
        for j in 1..=k {
            out.push((j, k));
        }
    }
    out
}

/// Parameter index recovered from the minor at (j,k):
/// #(j,k) = N - (C(k,2) + (j-1)).
pub fn param_index(n: usize, j: usize, k: usize) -> usize {
    let big_n = n * (n - 1) / 2;
    big_n - (k * (k - 1) / 2 + (j - 1))
}

/// The C(n,2) signed minors of a skew-symmetric matrix, in reverse
/// lexicographic order of (j,k).
#[derive(Clone, PartialEq, Debug)]
pub struct MinorTable {
    pub n: usize,
    pub values: Vec<((usize, usize), Rat)>,
}

impl MinorTable {
    pub fn of(a: &SkewMatrix) -> Result<MinorTable> {
        let n = a.rank();
        let mut values = Vec::new();
        for (j, k) in minor_index_order(n) {
            values.push(((j, k), m_minor(a, j, k)?));
        }
        Ok(MinorTable { n, values })
    }

    pub fn get(&self, j: usize, k: usize) -> Option<&Rat> {
        self.values
            .iter()
            .find(|((a, b), _)| *a == j && *b == k)
            .map(|(_, v)| v)
    }
}

/// Minimal positivity test: positive iff every signed minor is positive.
/// The full table is returned either way.
pub fn is_totally_positive(a: &SkewMatrix) -> Result<(bool, MinorTable)> {
    let table = MinorTable::of(a)?;
    let positive = table.values.iter().all(|(_, v)| v > &Rat::from_integer(0.into()));
    Ok((positive, table))
}

/// Exponent matrix of the minors as monomials in the parameters, one row
/// per (j,k) in reverse lexicographic order, built from the unique path
/// collection of each minor in the top-cell diagram.
fn minor_exponent_matrix(n: usize) -> Result<Matrix<Rat>> {
    let diagram = lgv::build_top(n);
    let big_n = n * (n - 1) / 2;
    let mut e = Matrix::<Rat>::zero(big_n, big_n);
    for (row, (j, k)) in minor_index_order(n).into_iter().enumerate() {
        let sinks = m_sink_set(n, j, k);
        let collections = lgv::enumerate_collections_unbounded(&diagram, &sinks);
        if collections.len() != 1 {
            return Err(Error::Internal(format!(
                "expected a unique path collection for ({j},{k}), found {}",
                collections.len()
            )));
        }
        let weight = lgv::collection_weight(&diagram, &collections[0]);
        for (param, mult) in weight.exponents.iter().enumerate() {
            e.set(row, param, Rat::from_integer((*mult as i64).into()));
        }
    }
    Ok(e)
}

/// Recovers the unique parameter vector whose Marsh-Rietsch point charts to
/// a matrix with the given minors: the exponent matrix of the minor
/// monomials is inverted over the integers and applied as a Laurent
/// monomial map.
pub fn recover_params(a: &SkewMatrix) -> Result<Vec<Rat>> {
    let table = MinorTable::of(a)?;
    recover_params_from_table(&table)
}

fn recover_params_from_table(table: &MinorTable) -> Result<Vec<Rat>> {
    let n = table.n;
    if table.values.iter().any(|(_, v)| v.is_zero()) {
        return Err(Error::OutsideRecoverableLocus);
    }
    let e = minor_exponent_matrix(n)?;
    let inv = e.inverse().map_err(|_| {
        Error::Internal("minor exponent matrix is singular".into())
    })?;
    let big_n = n * (n - 1) / 2;
    let mut params = Vec::with_capacity(big_n);
    for l in 0..big_n {
        let mut t = Rat::one();
        for (col, (_, m)) in table.values.iter().enumerate() {
            let exp = inv.get(l, col);
            if !exp.denom().is_one() {
                return Err(Error::Internal(
                    "exponent matrix inverse is not integral".into(),
                ));
            }
            let (num, _) = (exp.numer().clone(), ());
            let k: i64 = num.try_into().map_err(|_| {
                Error::Internal("exponent too large".into())
            })?;
            if k >= 0 {
                for _ in 0..k {
                    t *= m;
                }
            } else {
                for _ in 0..-k {
                    t /= m;
                }
            }
        }
        params.push(t);
    }
    Ok(params)
}

/// Rebuilds the matrix determined by a full table of nonzero minors.
pub fn reconstruct(table: &MinorTable) -> Result<SkewMatrix> {
    let params = recover_params_from_table(table)?;
    crate::group::marsh_rietsch(table.n, &params)?.chart()
}

/// Outcome of the nonnegativity test.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Positive,
    NonnegativeBoundary,
    NotNonnegative,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Positive => write!(f, "positive"),
            Verdict::NonnegativeBoundary => write!(f, "nonnegative-boundary"),
            Verdict::NotNonnegative => write!(f, "not-nonnegative"),
        }
    }
}

/// Lowest nonzero term of one perturbed minor: degree and coefficient.
pub type LeadingTerm = Option<(usize, Rat)>;

/// Per-minor Taylor data of the perturbed family and the verdict.
#[derive(Clone, PartialEq, Debug)]
pub struct NonnegReport {
    pub n: usize,
    pub verdict: Verdict,
    /// Lowest term of each numerator polynomial, in reverse lexicographic
    /// (j,k) order; None when the polynomial vanishes identically.
    pub leading: Vec<((usize, usize), LeadingTerm)>,
    /// First (j,k) in reverse lexicographic order whose lowest coefficient
    /// is negative (or whose numerator vanishes identically).
    pub witness: Option<(usize, usize)>,
}

/// Nonnegativity test: perturb [Id | A] by the positive family Z(eps) and
/// inspect the sign of the lowest Taylor coefficient of every signed minor.
/// All arithmetic stays polynomial: the minors of the perturbed chart
/// matrix are ratios of maximal minors of X(eps) by the left block minor,
/// whose constant term is 1.
pub fn is_totally_nonnegative(a: &SkewMatrix) -> Result<NonnegReport> {
    let n = a.rank();
    let z = z_family(n)?;
    let x0 = ChartPoint::from_skew(a);
    let x_poly = x0.matrix().map(|r| Poly::constant(r.clone()));
    let x_eps = x_poly.matmul(z.mat())?;
    let rows: Vec<usize> = (1..=n).collect();

    // Denominator normalization: the left block minor has constant term 1.
    let left_cols: Vec<usize> = (1..=n).collect();
    let denom = x_eps.minor(&rows, &left_cols)?;
    if denom.coeff(0) != Rat::one() {
        return Err(Error::Internal(
            "left block minor of X(eps) has constant term != 1".into(),
        ));
    }

    let mut leading = Vec::new();
    let mut witness = None;
    let mut all_constant_positive = true;
    let mut any_positive_degree = false;
    for (j, k) in minor_index_order(n) {
        let cols = m_sink_set(n, j, k);
        let plucker = x_eps.minor(&rows, &cols)?;
        // M_{j,k} of the chart matrix carries (-1)^{j(n-1)} relative to the
        // maximal minor of the point matrix.
        let numer = if (j * (n - 1)) % 2 == 0 {
            plucker
        } else {
            -plucker
        };
        match numer.lowest_term() {
            Ok((deg, coeff)) => {
                let negative = coeff < Rat::from_integer(0.into());
                if negative && witness.is_none() {
                    witness = Some((j, k));
                }
                if deg > 0 {
                    any_positive_degree = true;
                    all_constant_positive = false;
                } else if negative {
                    all_constant_positive = false;
                }
                leading.push(((j, k), Some((deg, coeff))));
            }
            Err(_) => {
                // A vanishing numerator curve cannot bound totally positive
                // points; report it loudly as the witness.
                if witness.is_none() {
                    witness = Some((j, k));
                }
                all_constant_positive = false;
                leading.push(((j, k), None));
            }
        }
    }
    let verdict = if witness.is_some() {
        Verdict::NotNonnegative
    } else if all_constant_positive && !any_positive_degree {
        Verdict::Positive
    } else {
        Verdict::NonnegativeBoundary
    };
    let report = NonnegReport {
        n,
        verdict,
        leading,
        witness,
    };
    debug_assert!(report.witness.is_some() == (report.verdict == Verdict::NotNonnegative));
    Ok(report)
}

/// Example matrices shared across test modules.
#[cfg(test)]
pub(crate) mod fixtures {
    use super::SkewMatrix;
    use crate::exact::rat;

    pub(crate) fn skew4(entries: [[i64; 4]; 4]) -> SkewMatrix {
        SkewMatrix::from_rows(
            entries
                .iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// The first displayed example matrix: nonnegative minors but not in
    /// the closure of the positive region.
    pub(crate) fn matrix_a1() -> SkewMatrix {
        skew4([[0, 0, 0, 2], [0, 0, 0, 0], [0, 0, 0, -2], [-2, 0, 2, 0]])
    }

    /// The nonnegative example used for cell identification.
    pub(crate) fn matrix_a2() -> SkewMatrix {
        skew4([[0, 0, 0, 2], [0, 0, 0, 0], [0, 0, 0, 2], [-2, 0, -2, 0]])
    }

    /// Pfaffian-nonnegative yet not totally nonnegative.
    pub(crate) fn matrix_a3() -> SkewMatrix {
        skew4([[0, 0, 0, 2], [0, 0, 1, 0], [0, -1, 0, 2], [-2, 0, -2, 0]])
    }
}
