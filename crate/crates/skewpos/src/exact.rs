//! Exact scalar and matrix arithmetic: arbitrary-precision rationals, dense
//! univariate polynomials in one deformation variable, matrices over either
//! ring, determinants, minors and Pfaffians.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar, always in canonical form
/// (positive denominator, gcd-reduced).
pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses the text form: optional sign, decimal integer, optional `/` and
/// positive decimal integer. Examples: `-3/7`, `2`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let den: BigInt = match den_s {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?,
        None => BigInt::one(),
    };
    if den <= BigInt::zero() {
        return Err(Error::Parse(format!(
            "denominator must be positive in {s:?}"
        )));
    }
    Ok(Rat::new(num, den))
}

/// Scalar ring a matrix can hold. Implemented by `Rat` and `Poly` only.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
}

impl Ring for Rat {}
impl Ring for Poly {}

/// Rings with an exact matrix determinant. Lets generic code take minors
/// without knowing whether entries are rationals or polynomials.
pub trait DetRing: Ring {
    fn matrix_det(m: &Matrix<Self>) -> Result<Self>;

    /// Whether the determinant equals one, given that it is already known
    /// to be constant (used by invariant checks that have established
    /// det^2 = 1).
    fn det_is_one(m: &Matrix<Self>) -> Result<bool> {
        Ok(Self::matrix_det(m)? == Self::one())
    }
}

impl DetRing for Rat {
    fn matrix_det(m: &Matrix<Rat>) -> Result<Rat> {
        m.det()
    }
}

impl DetRing for Poly {
    fn matrix_det(m: &Matrix<Poly>) -> Result<Poly> {
        m.det()
    }

    fn det_is_one(m: &Matrix<Poly>) -> Result<bool> {
        let zero = rat(0);
        Ok(m.map(|p| p.eval(&zero)).det()? == Rat::one())
    }
}

/// Dense univariate polynomial over `Rat`. `coeffs[d]` is the coefficient of
/// degree `d`; trailing zeros are trimmed, the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial c * eps^d.
    pub fn monomial(c: Rat, d: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); d];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    /// Coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rat {
        self.coeffs.get(d).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Smallest degree with nonzero coefficient, and that coefficient.
    pub fn lowest_term(&self) -> Result<(usize, Rat)> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|d| (d, self.coeffs[d].clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Text form: comma-separated coefficient list, lowest degree first.
    pub fn to_coeff_text(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the coefficient-list text form.
    pub fn from_coeff_text(s: &str) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Poly::zero());
        }
        Ok(Poly::new(
            s.split(',').map(parse_rat).collect::<Result<Vec<_>>>()?,
        ))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for d in 0..n {
            out.push(self.coeff(d) + rhs.coeff(d));
        }
        Poly::new(out)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rat::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if d == 1 {
                        write!(f, "e")?;
                    } else {
                        write!(f, "e^{d}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Dense row-major matrix over a single scalar ring.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Submatrix on 1-based, strictly increasing row and column index sets.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<Matrix<T>> {
        for w in [row_idx, col_idx] {
            if w.windows(2).any(|p| p[0] >= p[1]) {
                return Err(Error::IndexRange(
                    "indices must be strictly increasing".into(),
                ));
            }
        }
        if row_idx.iter().any(|&i| i == 0 || i > self.rows) {
            return Err(Error::IndexRange(format!(
                "row index out of 1..={}",
                self.rows
            )));
        }
        if col_idx.iter().any(|&j| j == 0 || j > self.cols) {
            return Err(Error::IndexRange(format!(
                "col index out of 1..={}",
                self.cols
            )));
        }
        let mut out = Matrix::zero(row_idx.len(), col_idx.len());
        for (a, &i) in row_idx.iter().enumerate() {
            for (b, &j) in col_idx.iter().enumerate() {
                out.set(a, b, self.get(i - 1, j - 1).clone());
            }
        }
        Ok(out)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&T) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl Matrix<Rat> {
    /// Exact determinant by fraction-free Bareiss elimination on the
    /// denominator-cleared integer matrix.
    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut l = BigInt::one();
            for j in 0..n {
                l = l.lcm(self.get(i, j).denom());
            }
            m.push(
                (0..n)
                    .map(|j| {
                        let e = self.get(i, j);
                        e.numer() * (&l / e.denom())
                    })
                    .collect(),
            );
            scale *= l;
        }
        Ok(Rat::new(bareiss_int_det(m), scale))
    }

    /// Minor on 1-based strictly increasing index sets of equal cardinality.
    pub fn minor(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<Rat> {
        if row_idx.len() != col_idx.len() {
            return Err(Error::Dimension(
                "row and column sets must have equal cardinality".into(),
            ));
        }
        self.submatrix(row_idx, col_idx)?.det()
    }

    /// Exact Pfaffian of an even-size skew-symmetric matrix, by the first-row
    /// expansion Pf(A) = sum_j (-1)^j a_{1j} Pf(A \ {1,j}) with memoization
    /// on index subsets.
    pub fn pfaffian(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n % 2 != 0 {
            return Err(Error::OddDimension(n));
        }
        check_skew(self)?;
        if n > 64 {
            return Err(Error::GuardExceeded { n, limit: 64 });
        }
        let mut memo: HashMap<u64, Rat> = HashMap::new();
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(pf_rec(self, full, &mut memo))
    }

    /// Exact inverse by Gaussian elimination with first-nonzero pivoting.
    pub fn inverse(&self) -> Result<Matrix<Rat>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::<Rat>::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero());
            let Some(p) = pivot else {
                return Err(Error::NotInChart);
            };
            if p != col {
                for j in 0..n {
                    let (x, y) = (a.get(col, j).clone(), a.get(p, j).clone());
                    a.set(col, j, y);
                    a.set(p, j, x);
                    let (x, y) = (inv.get(col, j).clone(), inv.get(p, j).clone());
                    inv.set(col, j, y);
                    inv.set(p, j, x);
                }
            }
            let d = a.get(col, col).clone();
            for j in 0..n {
                a.set(col, j, a.get(col, j) / &d);
                inv.set(col, j, inv.get(col, j) / &d);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let v = a.get(r, j) - &f * a.get(col, j);
                    a.set(r, j, v);
                    let v = inv.get(r, j) - &f * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }
}

fn check_skew(m: &Matrix<Rat>) -> Result<()> {
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            if m.get(i, j) != &(-m.get(j, i)) {
                return Err(Error::NotSkew { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(())
}

fn bareiss_int_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                // Exact division is guaranteed by the Bareiss identity.
                m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = std::mem::take(&mut m[n - 1][n - 1]);
    if sign < 0 {
        -d
    } else {
        d
    }
}

fn pf_rec(m: &Matrix<Rat>, active: u64, memo: &mut HashMap<u64, Rat>) -> Rat {
    if active == 0 {
        return Rat::one();
    }
    if let Some(v) = memo.get(&active) {
        return v.clone();
    }
    let idx: Vec<usize> = (0..m.nrows()).filter(|&i| active >> i & 1 == 1).collect();
    let first = idx[0];
    let mut acc = Rat::zero();
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let a = m.get(first, j);
        if a.is_zero() {
            continue;
        }
        // Column position within the submatrix is the 1-based `pos + 1`.
        let rest = active & !(1 << first) & !(1 << j);
        let term = a * pf_rec(m, rest, memo);
        if (pos + 1) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    memo.insert(active, acc.clone());
    acc
}

impl Matrix<Poly> {
    /// Exact determinant of a polynomial matrix by evaluation at
    /// `n * max_degree + 1` rational points followed by interpolation.
    pub fn det(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one());
        }
        let max_deg = self
            .data
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0);
        let bound = n * max_deg;
        let mut points = Vec::with_capacity(bound + 1);
        for k in 0..=bound {
            let x = rat(k as i64);
            let evaluated = self.map(|p| p.eval(&x));
            points.push((x, evaluated.det()?));
        }
        Ok(interpolate(&points))
    }

    pub fn minor(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<Poly> {
        if row_idx.len() != col_idx.len() {
            return Err(Error::Dimension(
                "row and column sets must have equal cardinality".into(),
            ));
        }
        self.submatrix(row_idx, col_idx)?.det()
    }
}

/// Newton-form interpolation through distinct rational nodes.
fn interpolate(points: &[(Rat, Rat)]) -> Poly {
    let n = points.len();
    let mut table: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
    let mut coeffs = vec![table[0].clone()];
    for level in 1..n {
        for i in 0..n - level {
            let num = &table[i + 1] - &table[i];
            let den = &points[i + level].0 - &points[i].0;
            table[i] = num / den;
        }
        table.truncate(n - level);
        coeffs.push(table[0].clone());
    }
    let mut result = Poly::zero();
    let mut basis = Poly::one();
    for (k, c) in coeffs.into_iter().enumerate() {
        result = result + basis.scale(&c);
        if k + 1 < n {
            let linear = Poly::new(vec![-&points[k].0, Rat::one()]);
            basis = basis * linear;
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use proptest::prelude::*;

    fn mat(rows: Vec<Vec<i64>>) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Permutation-sum Pfaffian, Pf(A) = 1/(2^m m!) sum_sigma sgn(sigma)
    /// prod a_{sigma(2i-1),sigma(2i)}. Test-only oracle, factorial cost.
    fn pfaffian_perm_sum(m: &Matrix<Rat>) -> Rat {
        let n = m.nrows();
        assert!(n % 2 == 0 && n <= 6);
        let half = n / 2;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Rat::zero();
        permute(&mut perm, 0, &mut |p, even| {
            let mut prod = Rat::one();
            for i in 0..half {
                prod *= m.get(p[2 * i], p[2 * i + 1]);
            }
            if even {
                total += prod;
            } else {
                total -= prod;
            }
        });
        let mut fact = 1i64;
        for k in 1..=half as i64 {
            fact *= k;
        }
        total / rat(fact * (1 << half))
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], bool)) {
        let n = p.len();
        if k == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            f(p, inv % 2 == 0);
            return;
        }
        for i in k..n {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    fn random_skew(n: usize, rng: &mut SplitMix64) -> Matrix<Rat> {
        let mut m = Matrix::<Rat>::zero(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = rng.rat_small();
                m.set(i, j, v.clone());
                m.set(j, i, -v);
            }
        }
        m
    }

    #[test]
    fn det_identity_and_cofactor() {
        assert_eq!(Matrix::<Rat>::identity(5).det().unwrap(), rat(1));
        assert_eq!(mat(vec![vec![1, 2], vec![3, 4]]).det().unwrap(), rat(-2));
        assert_eq!(
            mat(vec![vec![1, 2, 3], vec![4, 5, 6], vec![1, 2, 3]])
                .det()
                .unwrap(),
            rat(0)
        );
        assert!(Matrix::<Rat>::zero(2, 3).det().is_err());
    }

    #[test]
    fn det_row_swap_negates() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..20 {
            let mut rows: Vec<Vec<Rat>> = (0..4)
                .map(|_| (0..4).map(|_| rng.rat_small()).collect())
                .collect();
            let a = Matrix::from_rows(rows.clone()).unwrap();
            rows.swap(1, 3);
            let b = Matrix::from_rows(rows).unwrap();
            assert_eq!(a.det().unwrap(), -b.det().unwrap());
        }
    }

    #[test]
    fn minor_cases() {
        let id4 = Matrix::<Rat>::identity(4);
        assert_eq!(id4.minor(&[1, 2], &[1, 2]).unwrap(), rat(1));
        let a = mat(vec![
            vec![0, 1, 2, 7],
            vec![3, 0, 4, 5],
            vec![6, 8, 0, 9],
            vec![1, 1, 1, 0],
        ]);
        assert_eq!(a.minor(&[1], &[4]).unwrap(), rat(7));
        assert_eq!(
            mat(vec![vec![1, 2], vec![3, 4]])
                .minor(&[1, 2], &[1, 2])
                .unwrap(),
            rat(-2)
        );
        assert!(a.minor(&[1, 2], &[1]).is_err());
        assert!(a.minor(&[2, 1], &[1, 2]).is_err());
        assert!(a.minor(&[1, 5], &[1, 2]).is_err());
    }

    #[test]
    fn pfaffian_base_cases() {
        let m = mat(vec![vec![0, 3], vec![-3, 0]]);
        assert_eq!(m.pfaffian().unwrap(), rat(3));
        assert_eq!(Matrix::<Rat>::zero(4, 4).pfaffian().unwrap(), rat(0));
        assert!(Matrix::<Rat>::zero(3, 3).pfaffian().is_err());
        assert!(mat(vec![vec![0, 1], vec![1, 0]]).pfaffian().is_err());
    }

    #[test]
    fn pfaffian_matches_permutation_sum_oracle() {
        let mut rng = SplitMix64::new(7);
        for n in [2usize, 4, 6] {
            for _ in 0..10 {
                let m = random_skew(n, &mut rng);
                assert_eq!(m.pfaffian().unwrap(), pfaffian_perm_sum(&m));
            }
        }
    }

    #[test]
    fn pfaffian_squared_is_det() {
        let mut rng = SplitMix64::new(99);
        let mut count = 0;
        while count < 200 {
            for n in [2usize, 4, 6, 8] {
                let m = random_skew(n, &mut rng);
                let pf = m.pfaffian().unwrap();
                assert_eq!(&pf * &pf, m.det().unwrap());
                count += 1;
            }
        }
    }

    #[test]
    fn lowest_term_cases() {
        let p = Poly::monomial(rat(80), 5) + Poly::monomial(rat(3), 7);
        assert_eq!(p.lowest_term().unwrap(), (5, rat(80)));
        let q = Poly::new(vec![rat(2), rat(-8)]);
        assert_eq!(q.lowest_term().unwrap(), (0, rat(2)));
        let r = Poly::monomial(rat(-16), 2) + Poly::monomial(rat(5), 4);
        assert_eq!(r.lowest_term().unwrap(), (2, rat(-16)));
        assert_eq!(Poly::zero().lowest_term(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn poly_det_cases() {
        let e = Poly::monomial(rat(1), 1);
        let diag = Matrix::from_rows(vec![
            vec![e.clone(), Poly::zero()],
            vec![Poly::zero(), e.clone()],
        ])
        .unwrap();
        assert_eq!(diag.det().unwrap(), Poly::monomial(rat(1), 2));

        let m = Matrix::from_rows(vec![
            vec![Poly::one(), e.clone()],
            vec![e.clone(), Poly::one()],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), Poly::new(vec![rat(1), rat(0), rat(-1)]));

        let z = Matrix::from_rows(vec![
            vec![Poly::zero(), Poly::zero()],
            vec![e.clone(), Poly::constant(rat(4))],
        ])
        .unwrap();
        assert_eq!(z.det().unwrap(), Poly::zero());
    }

    #[test]
    fn poly_det_agrees_with_evaluation() {
        let mut rng = SplitMix64::new(5);
        for _ in 0..5 {
            let m = Matrix::from_rows(
                (0..3)
                    .map(|_| {
                        (0..3)
                            .map(|_| {
                                Poly::new(vec![rng.rat_small(), rng.rat_small(), rng.rat_small()])
                            })
                            .collect()
                    })
                    .collect(),
            )
            .unwrap();
            let d = m.det().unwrap();
            for _ in 0..10 {
                let c = rng.rat_small();
                assert_eq!(d.eval(&c), m.map(|p| p.eval(&c)).det().unwrap());
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = mat(vec![vec![2, 1, 0], vec![0, 1, 3], vec![1, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), Matrix::identity(3));
    }

    proptest! {
        #[test]
        fn rational_text_round_trip(n in -9999i64..9999, d in 1i64..9999) {
            let r = ratio(n, d);
            let s = r.to_string();
            prop_assert_eq!(parse_rat(&s).unwrap(), r);
        }

        #[test]
        fn poly_text_round_trip(coeffs in proptest::collection::vec(-50i64..50, 0..6)) {
            let p = Poly::new(coeffs.into_iter().map(rat).collect());
            prop_assert_eq!(Poly::from_coeff_text(&p.to_coeff_text()).unwrap(), p);
        }

        #[test]
        fn poly_ring_axioms(a in proptest::collection::vec(-20i64..20, 0..5),
                            b in proptest::collection::vec(-20i64..20, 0..5)) {
            let pa = Poly::new(a.iter().copied().map(rat).collect());
            let pb = Poly::new(b.iter().copied().map(rat).collect());
            let x = ratio(3, 7);
            prop_assert_eq!(
                (pa.clone() + pb.clone()).eval(&x),
                pa.eval(&x) + pb.eval(&x)
            );
            prop_assert_eq!(
                (pa.clone() * pb.clone()).eval(&x),
                pa.eval(&x) * pb.eval(&x)
            );
        }
    }
}
