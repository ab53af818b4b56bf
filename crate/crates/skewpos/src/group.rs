//! The pinned group SO(2n): one-parameter subgroup matrices, lifted
//! reflections, Marsh-Rietsch products, projection to the first n rows,
//! chart row-reduction to [Id | A], and the one-parameter positive family
//! used by the nonnegativity test.

use crate::error::{Error, Result};
use crate::exact::{DetRing, Matrix, Poly, Rat, Ring};
use crate::positivity::SkewMatrix;
use crate::weyl::{
    bruhat_leq, coset_word_from_subset, distinguished_subexpr, min_coset_rep, w0_coset_word,
    w0_word, SignedPerm,
};

/// Gram matrix of the split bilinear form: zero blocks on the diagonal,
/// identities off it.
pub fn q_matrix<T: Ring>(n: usize) -> Matrix<T> {
    let mut q = Matrix::<T>::zero(2 * n, 2 * n);
    for i in 0..n {
        q.set(i, n + i, T::one());
        q.set(n + i, i, T::one());
    }
    q
}

/// Element of SO(2n) for the split form: a 2n x 2n matrix with
/// M^T Q M = Q and det M = 1, checked in debug builds.
#[derive(Clone, PartialEq, Debug)]
pub struct GroupElem<T: DetRing> {
    n: usize,
    mat: Matrix<T>,
}

impl<T: DetRing> GroupElem<T> {
    pub fn new(n: usize, mat: Matrix<T>) -> Result<Self> {
        if mat.nrows() != 2 * n || mat.ncols() != 2 * n {
            return Err(Error::Dimension(format!(
                "group element must be {0}x{0}",
                2 * n
            )));
        }
        let elem = GroupElem { n, mat };
        debug_assert!(elem.check_invariant().is_ok(), "not in SO(2n)");
        Ok(elem)
    }

    pub fn identity(n: usize) -> Self {
        GroupElem {
            n,
            mat: Matrix::identity(2 * n),
        }
    }

    fn check_invariant(&self) -> Result<()> {
        let q = q_matrix::<T>(self.n);
        let lhs = self.mat.transpose().matmul(&q)?.matmul(&self.mat)?;
        if lhs != q {
            return Err(Error::Internal("M^T Q M != Q".into()));
        }
        // Q-invariance forces det^2 = 1, so for polynomial entries the
        // determinant is a constant and its value at 0 decides the sign.
        if !T::det_is_one(&self.mat)? {
            return Err(Error::Internal("det != 1".into()));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn mat(&self) -> &Matrix<T> {
        &self.mat
    }

    pub fn mul(&self, other: &GroupElem<T>) -> Result<GroupElem<T>> {
        GroupElem::new(self.n, self.mat.matmul(&other.mat)?)
    }

    pub fn transpose(&self) -> GroupElem<T> {
        GroupElem {
            n: self.n,
            mat: self.mat.transpose(),
        }
    }
}

/// The one-parameter matrix x_i(t): identity plus t in (i, i+1) and -t in
/// (n+i+1, n+i) for i < n; for i = n, t in (n-1, 2n) and -t in (n, 2n-1).
pub fn x_gen<T: DetRing>(n: usize, i: usize, t: T) -> Result<GroupElem<T>> {
    if i == 0 || i > n {
        return Err(Error::GeneratorRange { i, n });
    }
    let mut m = Matrix::<T>::identity(2 * n);
    if i < n {
        m.set(i - 1, i, t.clone());
        m.set(n + i, n + i - 1, -t);
    } else {
        m.set(n - 2, 2 * n - 1, t.clone());
        m.set(n - 1, 2 * n - 2, -t);
    }
    GroupElem::new(n, m)
}

/// The pinned lift of the generator s_i.
pub fn sdot<T: DetRing>(n: usize, i: usize) -> Result<GroupElem<T>> {
    if i == 0 || i > n {
        return Err(Error::GeneratorRange { i, n });
    }
    let mut m = Matrix::<T>::identity(2 * n);
    let one = T::one;
    if i < n {
        for base in [i - 1, n + i - 1] {
            m.set(base, base, T::zero());
            m.set(base + 1, base + 1, T::zero());
            m.set(base, base + 1, -one());
            m.set(base + 1, base, one());
        }
    } else {
        for d in [n - 2, n - 1, 2 * n - 2, 2 * n - 1] {
            m.set(d, d, T::zero());
        }
        m.set(n - 2, 2 * n - 1, -one());
        m.set(n - 1, 2 * n - 2, one());
        m.set(2 * n - 2, n - 1, -one());
        m.set(2 * n - 1, n - 2, one());
    }
    GroupElem::new(n, m)
}

/// Row span representative of a point of the orthogonal Grassmannian:
/// an n x 2n matrix whose row span is isotropic (checked in debug builds).
#[derive(Clone, PartialEq, Debug)]
pub struct ChartPoint<T: DetRing> {
    n: usize,
    x: Matrix<T>,
}

impl<T: DetRing> ChartPoint<T> {
    pub fn new(n: usize, x: Matrix<T>) -> Result<Self> {
        if x.nrows() != n || x.ncols() != 2 * n {
            return Err(Error::Dimension(format!("point matrix must be {n}x{}", 2 * n)));
        }
        let point = ChartPoint { n, x };
        debug_assert!(point.isotropy_holds(), "row span is not isotropic");
        Ok(point)
    }

    pub fn isotropy_holds(&self) -> bool {
        let q = q_matrix::<T>(self.n);
        let prod = self
            .x
            .matmul(&q)
            .and_then(|m| m.matmul(&self.x.transpose()))
            .expect("dimensions agree");
        prod == Matrix::zero(self.n, self.n)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.x
    }

    /// Maximal minor in the 1-based columns `cols`.
    pub fn plucker(&self, cols: &[usize]) -> Result<T> {
        let rows: Vec<usize> = (1..=self.n).collect();
        if cols.len() != self.n {
            return Err(Error::Dimension(format!(
                "need {} columns, got {}",
                self.n,
                cols.len()
            )));
        }
        T::matrix_det(&self.x.submatrix(&rows, cols)?)
    }
}

/// Projection to the row span of the first n rows.
pub fn pi_n<T: DetRing>(g: &GroupElem<T>) -> ChartPoint<T> {
    let n = g.rank();
    let mut x = Matrix::zero(n, 2 * n);
    for i in 0..n {
        for j in 0..2 * n {
            x.set(i, j, g.mat().get(i, j).clone());
        }
    }
    ChartPoint::new(n, x).expect("projection of a group element is isotropic")
}

impl ChartPoint<Rat> {
    /// Row-reduces to [Id | A] and returns the skew-symmetric A.
    /// Fails when the left n x n block is singular.
    pub fn chart(&self) -> Result<SkewMatrix> {
        let n = self.n;
        let all: Vec<usize> = (1..=n).collect();
        let left_cols: Vec<usize> = (1..=n).collect();
        let right_cols: Vec<usize> = (n + 1..=2 * n).collect();
        let left = self.x.submatrix(&all, &left_cols)?;
        let right = self.x.submatrix(&all, &right_cols)?;
        let a = left.inverse()?.matmul(&right)?;
        SkewMatrix::new(a)
    }

    /// The point [Id | A] of the skew chart.
    pub fn from_skew(a: &SkewMatrix) -> ChartPoint<Rat> {
        let n = a.rank();
        let mut x = Matrix::<Rat>::zero(n, 2 * n);
        for i in 0..n {
            x.set(i, i, Rat::one());
            for j in 0..n {
                x.set(i, n + j, a.entry(i + 1, j + 1).clone());
            }
        }
        ChartPoint::new(n, x).expect("skew chart points are isotropic")
    }
}

use num_traits::One;

/// The Marsh-Rietsch point for parameters along the fixed coset word.
pub fn marsh_rietsch(n: usize, params: &[Rat]) -> Result<ChartPoint<Rat>> {
    let word = w0_coset_word(n);
    if params.len() != word.len() {
        return Err(Error::ParamCount {
            expected: word.len(),
            got: params.len(),
        });
    }
    let mut g = GroupElem::<Rat>::identity(n);
    for (&i, t) in word.letters.iter().zip(params) {
        g = g.mul(&x_gen(n, i, t.clone())?)?;
    }
    Ok(pi_n(&g))
}

/// The totally positive one-parameter family Z(eps) = z(eps)^T z(eps),
/// where z(eps) multiplies x_i(eps) along the full reduced word for the
/// longest element. Z(0) is the identity.
pub fn z_family(n: usize) -> Result<GroupElem<Poly>> {
    let eps = Poly::monomial(Rat::one(), 1);
    let mut z = GroupElem::<Poly>::identity(n);
    for &i in &w0_word(n).letters {
        z = z.mul(&x_gen(n, i, eps.clone())?)?;
    }
    z.transpose().mul(&z)
}

/// Point of the positive Richardson cell for (v, w): along w's reduced word
/// inside the fixed coset word, unselected positions of v's distinguished
/// mask contribute x_{i_k}(t) with the parameters consumed left to right,
/// and selected positions contribute the transposed lift of s_{i_k}.
pub fn deodhar_point(v: &SignedPerm, w: &SignedPerm, params: &[Rat]) -> Result<ChartPoint<Rat>> {
    let n = w.rank();
    if &min_coset_rep(w) != w {
        return Err(Error::InvalidCellLabel(format!(
            "{} is not a minimal coset representative",
            w.window_string()
        )));
    }
    if !bruhat_leq(v, w) {
        return Err(Error::NotBruhatBelow {
            v: v.window_string(),
            w: w.window_string(),
        });
    }
    let w_word = coset_word_from_subset(n, &w.subset_of())?.selected_word();
    let mask_v = distinguished_subexpr(v, &w_word)?;
    let expected = w_word.len() - mask_v.selected_count();
    if params.len() != expected {
        return Err(Error::ParamCount {
            expected,
            got: params.len(),
        });
    }
    let mut g = GroupElem::<Rat>::identity(n);
    let mut next = 0usize;
    for (k, &i) in w_word.letters.iter().enumerate() {
        let factor = if mask_v.mask[k] {
            sdot::<Rat>(n, i)?.transpose()
        } else {
            let t = params[next].clone();
            next += 1;
            x_gen(n, i, t)?
        };
        g = GroupElem::new(n, g.mat().matmul(factor.mat())?)?;
    }
    Ok(pi_n(&g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use num_traits::Zero;
    use crate::rng::SplitMix64;
    use crate::weyl::Word;

    #[test]
    fn x_gen_entries_match_pinning() {
        // n = 4, i = 1: t at (1,2) and -t at (6,5).
        let t = ratio(5, 3);
        let g = x_gen(4, 1, t.clone()).unwrap();
        assert_eq!(g.mat().get(0, 1), &t);
        assert_eq!(g.mat().get(5, 4), &(-t.clone()));
        // n = 4, i = 4: t at (3,8) and -t at (4,7).
        let g = x_gen(4, 4, t.clone()).unwrap();
        assert_eq!(g.mat().get(2, 7), &t);
        assert_eq!(g.mat().get(3, 6), &(-t.clone()));
        // Zero parameter gives the identity.
        assert_eq!(x_gen(4, 2, rat(0)).unwrap(), GroupElem::identity(4));
        assert!(x_gen::<Rat>(4, 5, rat(1)).is_err());
    }

    #[test]
    fn x_gen_one_parameter_subgroup() {
        let mut rng = SplitMix64::new(3);
        for n in [3usize, 4] {
            for i in 1..=n {
                for _ in 0..20 {
                    let (s, t) = (rng.rat_small(), rng.rat_small());
                    let a = x_gen(n, i, s.clone()).unwrap();
                    let b = x_gen(n, i, t.clone()).unwrap();
                    assert_eq!(a.mul(&b).unwrap(), x_gen(n, i, s + t).unwrap());
                }
            }
        }
    }

    #[test]
    fn sdot_is_orthogonal_and_lifts_generator() {
        for n in [3usize, 4] {
            for i in 1..=n {
                let s = sdot::<Rat>(n, i).unwrap();
                // Support pattern matches the permutation action up to sign.
                let perm = SignedPerm::generator(n, i).unwrap();
                for row in 1..=2 * n {
                    for col in 1..=2 * n {
                        let nonzero = !s.mat().get(row - 1, col - 1).is_zero();
                        assert_eq!(nonzero, perm.apply(row) == col, "n={n} i={i} ({row},{col})");
                    }
                }
                // Involution up to the group inverse.
                let prod = s.mul(&s.transpose()).unwrap();
                let qi = q_matrix::<Rat>(n);
                let tqt = s.mat().transpose().matmul(&qi).unwrap().matmul(s.mat()).unwrap();
                assert_eq!(tqt, qi);
                assert_eq!(
                    prod.mat(),
                    GroupElem::<Rat>::identity(n).mat(),
                    "s times s^T is the identity for these lifts"
                );
            }
        }
    }

    #[test]
    fn pi_n_identity_and_isotropy() {
        let p = pi_n(&GroupElem::<Rat>::identity(4));
        let a = p.chart().unwrap();
        assert_eq!(a, SkewMatrix::zero(4));
        let mut rng = SplitMix64::new(17);
        for _ in 0..5 {
            let t: Vec<Rat> = (0..6).map(|_| rng.rat_positive()).collect();
            let p = marsh_rietsch(4, &t).unwrap();
            assert!(p.isotropy_holds());
        }
    }

    #[test]
    fn marsh_rietsch_matches_displayed_matrix() {
        // The X matrix for n = 4 at parameters t1..t6, checked entrywise
        // against the displayed product.
        let mut rng = SplitMix64::new(23);
        let t: Vec<Rat> = (0..6).map(|_| rng.rat_positive()).collect();
        let p = marsh_rietsch(4, &t).unwrap();
        let x = p.matrix();
        let (t1, t2, t3, t4, t5, t6) = (
            t[0].clone(),
            t[1].clone(),
            t[2].clone(),
            t[3].clone(),
            t[4].clone(),
            t[5].clone(),
        );
        let expected: Vec<Vec<Rat>> = vec![
            vec![
                rat(1),
                t3.clone(),
                &t3 * &t5,
                rat(0),
                rat(0),
                rat(0),
                rat(0),
                &t3 * &t5 * &t6,
            ],
            vec![
                rat(0),
                rat(1),
                &t2 + &t5,
                &t2 * &t4,
                rat(0),
                rat(0),
                -(&t2 * &t4 * &t6),
                &t2 * &t6 + &t5 * &t6,
            ],
            vec![
                rat(0),
                rat(0),
                rat(1),
                t4.clone(),
                rat(0),
                &t1 * &t4 * &t5,
                -(&t1 * &t4) - (&t4 * &t6),
                &t1 + &t6,
            ],
            vec![
                rat(0),
                rat(0),
                rat(0),
                rat(1),
                -(&t1 * &t2 * &t3),
                &t1 * &t2 + &t1 * &t5,
                -&t1 - &t6,
                rat(0),
            ],
        ];
        for i in 0..4 {
            for j in 0..8 {
                assert_eq!(x.get(i, j), &expected[i][j], "entry ({i},{j})");
            }
        }
        // And the chart matrix: entry (1,2) = t1 t2 t3 t4 t5, entry (3,4) = t1 + t6.
        let a = p.chart().unwrap();
        assert_eq!(a.entry(1, 2), &(&t1 * &t2 * &t3 * &t4 * &t5));
        assert_eq!(a.entry(3, 4), &(&t1 + &t6));
        assert_eq!(a.entry(1, 4), &(&t1 * &t2 * &t3));
    }

    #[test]
    fn chart_round_trip_and_errors() {
        let ones: Vec<Rat> = vec![rat(1); 6];
        let a = marsh_rietsch(4, &ones).unwrap().chart().unwrap();
        assert_eq!(a.entry(1, 2), &rat(1));
        assert_eq!(a.entry(3, 4), &rat(2));
        let p = ChartPoint::from_skew(&a);
        assert_eq!(p.chart().unwrap(), a);
        // All parameters zero gives the zero matrix.
        let z = marsh_rietsch(4, &vec![rat(0); 6]).unwrap().chart().unwrap();
        assert_eq!(z, SkewMatrix::zero(4));
        assert!(marsh_rietsch(4, &vec![rat(1); 5]).is_err());
    }

    #[test]
    fn chart_skewness_forced() {
        // Positive samples always land in the chart, with skew output.
        let mut rng = SplitMix64::new(31);
        for n in 3..=6 {
            for _ in 0..13 {
                let count = n * (n - 1) / 2;
                let t: Vec<Rat> = (0..count).map(|_| rng.rat_positive()).collect();
                let p = marsh_rietsch(n, &t).unwrap();
                let a = p.chart().unwrap();
                assert_eq!(a.rank(), n);
            }
        }
    }

    #[test]
    fn z_family_structure() {
        let z = z_family(4).unwrap();
        // Constant term is the identity.
        let at_zero = z.mat().map(|p| p.eval(&rat(0)));
        assert_eq!(at_zero, Matrix::<Rat>::identity(8));
        // Group invariant as a polynomial identity.
        let q = q_matrix::<Poly>(4);
        let lhs = z.mat().transpose().matmul(&q).unwrap().matmul(z.mat()).unwrap();
        assert_eq!(lhs, q);
        // Spot entries from the displayed matrix.
        assert_eq!(z.mat().get(0, 1), &Poly::monomial(rat(4), 1));
        assert_eq!(z.mat().get(0, 3), &Poly::monomial(rat(7), 3));
        assert_eq!(z.mat().get(0, 7), &Poly::monomial(rat(13), 3));
        assert_eq!(z.mat().get(0, 4), &Poly::monomial(rat(-1), 6));
    }

    #[test]
    fn deodhar_point_reduces_to_marsh_rietsch() {
        let n = 4;
        let id = SignedPerm::identity(n);
        let w = w0_coset_word(n).product(n).unwrap();
        let mut rng = SplitMix64::new(41);
        let t: Vec<Rat> = (0..6).map(|_| rng.rat_positive()).collect();
        let viad = deodhar_point(&id, &w, &t).unwrap();
        let viam = marsh_rietsch(n, &t).unwrap();
        assert_eq!(viad, viam);
    }

    #[test]
    fn deodhar_point_torus_fixed_and_errors() {
        let n = 4;
        let w = w0_coset_word(n).product(n).unwrap();
        // v = w leaves no free parameters.
        let p = deodhar_point(&w, &w, &[]).unwrap();
        assert!(p.isotropy_holds());
        // Wrong parameter count.
        let id = SignedPerm::identity(n);
        assert!(deodhar_point(&id, &w, &[rat(1)]).is_err());
        // w not minimal.
        let s1 = SignedPerm::generator(n, 1).unwrap();
        let not_min = s1.compose(&w);
        assert!(deodhar_point(&id, &not_min, &vec![rat(1); 7]).is_err());
        // v not below w.
        let w0 = Word::new(w0_word(n).letters).product(n).unwrap();
        assert!(deodhar_point(&w0, &w, &vec![rat(1); 6]).is_err());
    }
}
