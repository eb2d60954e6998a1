//! Similitudes of the antidiagonal form `J` and the special matrices built
//! from them: elementary unipotents of `SO_m`, monomial Weyl representatives
//! and the matrix `h_a`.

use crate::arith::{ArithError, Field, QuadElem, Q};
use crate::linalg::Mat;
use num::{One, Zero};

/// The antidiagonal matrix with ones from top right to bottom left.
pub fn antidiag<F: Field>(m: usize) -> Mat<F> {
    let mut j = Mat::zeros(m, m);
    for i in 0..m {
        j[(i, m - 1 - i)] = F::one();
    }
    j
}

/// A matrix `g` with `g J gᵀ = λ J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilitudeMatrix<F> {
    mat: Mat<F>,
    lambda: F,
}

impl<F: Field> SimilitudeMatrix<F> {
    /// Checks the similitude identity exactly and records `λ`.
    pub fn new(mat: Mat<F>) -> Result<Self, ArithError> {
        if !mat.is_square() || mat.rows() == 0 {
            return Err(ArithError::NotSimilitude);
        }
        let m = mat.rows();
        let j = antidiag::<F>(m);
        let gjg = mat.mul(&j).mul(&mat.transpose());
        let lambda = gjg[(0, m - 1)].clone();
        if lambda.is_zero() || gjg != j.scale(&lambda) {
            return Err(ArithError::NotSimilitude);
        }
        Ok(SimilitudeMatrix { mat, lambda })
    }

    pub fn identity(m: usize) -> Self {
        SimilitudeMatrix {
            mat: Mat::identity(m),
            lambda: F::one(),
        }
    }

    pub fn size(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Mat<F> {
        &self.mat
    }

    pub fn lambda(&self) -> &F {
        &self.lambda
    }

    pub fn mul(&self, o: &Self) -> Self {
        SimilitudeMatrix {
            mat: self.mat.mul(&o.mat),
            lambda: self.lambda.clone() * o.lambda.clone(),
        }
    }

    /// `g⁻¹ = λ⁻¹ J gᵀ J`.
    pub fn inverse(&self) -> Self {
        let m = self.size();
        let j = antidiag::<F>(m);
        let li = self.lambda.inv().expect("lambda is nonzero");
        SimilitudeMatrix {
            mat: j.mul(&self.mat.transpose()).mul(&j).scale(&li),
            lambda: li,
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SimilitudeMatrix<G> {
        SimilitudeMatrix {
            mat: self.mat.map(&f),
            lambda: f(&self.lambda),
        }
    }
}

fn check_index(m: usize, i: usize) -> Result<(), ArithError> {
    if i == 0 || i > m {
        Err(ArithError::Index(format!("{i} not in 1..={m}")))
    } else {
        Ok(())
    }
}

/// The one-parameter unipotent `exp(a·e′_{ij})` of `SO_m` (1-based indices),
/// where `e′_{ij} = e_{ij} − e_{m+1−j, m+1−i}`.
///
/// When `e′_{ij}` squares to zero this is `I + a·e′_{ij}`. When `m` is odd and
/// one of `i, j` is the middle index, the square is nonzero and the quadratic
/// term `−(a²/2)·e_{i, m+1−i}` (or its mirror) is added.
pub fn so_elementary(m: usize, i: usize, j: usize, a: &Q) -> Result<SimilitudeMatrix<Q>, ArithError> {
    check_index(m, i)?;
    check_index(m, j)?;
    if i == j {
        return Err(ArithError::Index(format!("e'_{{{i}{j}}} needs i != j")));
    }
    let x = e_prime::<Q>(m, i, j).scale(a);
    let x2 = x.mul(&x);
    let g = Mat::<Q>::identity(m)
        .add(&x)
        .add(&x2.scale(&Q::new(1.into(), 2.into())));
    SimilitudeMatrix::new(g)
}

/// The matrix `e′_{ij} = e_{ij} − e_{m+1−j, m+1−i}` (1-based indices); zero
/// when `j = m+1−i`.
pub fn e_prime<F: Field>(m: usize, i: usize, j: usize) -> Mat<F> {
    let mut x = Mat::<F>::zeros(m, m);
    x[(i - 1, j - 1)] = x[(i - 1, j - 1)].clone() + F::one();
    x[(m - j, m - i)] = x[(m - j, m - i)].clone() - F::one();
    x
}

/// Monomial matrix sending `e_i` to `signs[i]·e_{perm[i]}` (1-based images).
pub fn monomial<F: Field>(perm: &[usize], signs: &[i64]) -> Result<SimilitudeMatrix<F>, ArithError> {
    let m = perm.len();
    if signs.len() != m {
        return Err(ArithError::Index("signs length differs from permutation length".into()));
    }
    let mut seen = vec![false; m];
    let mut g = Mat::<F>::zeros(m, m);
    for (i, (&p, &s)) in perm.iter().zip(signs).enumerate() {
        check_index(m, p)?;
        if seen[p - 1] || s == 0 {
            return Err(ArithError::Index(format!("not a signed permutation: {perm:?} {signs:?}")));
        }
        seen[p - 1] = true;
        g[(p - 1, i)] = F::from_i64(s);
    }
    SimilitudeMatrix::new(g)
}

/// Diagonal similitude `diag(t_1, …, t_m)`.
pub fn diagonal<F: Field>(entries: &[F]) -> Result<SimilitudeMatrix<F>, ArithError> {
    let m = entries.len();
    let mut g = Mat::<F>::zeros(m, m);
    for (i, t) in entries.iter().enumerate() {
        g[(i, i)] = t.clone();
    }
    SimilitudeMatrix::new(g)
}

/// The element `h_a` of `SO_{4n+1}` carrying `Ψ_ℓ` to `Ψ_ℓ^a`:
/// `diag(√a⁻¹·I_{2n−1}, M, √a·I_{2n−1})` with the 3×3 block
/// `M = [[−1/(2√a), 1/√a, 1/√a], [1/2, 0, 1], [√a/4, √a/2, −√a/2]]`
/// in rows and columns `2n, 2n+1, 2n+2`.
pub fn h_a_matrix(n: usize, ell: usize, a: &Q) -> Result<SimilitudeMatrix<QuadElem>, ArithError> {
    if a.is_zero() {
        return Err(ArithError::ZeroParameter);
    }
    if n == 0 || ell == 0 || ell > 2 * n - 1 {
        return Err(ArithError::Index(format!("need 1 <= ell < 2n, got n={n} ell={ell}")));
    }
    let m = 4 * n + 1;
    let s = QuadElem::sqrt(a)?;
    let si = s.inv().expect("nonzero root");
    let half = QuadElem::rational(Q::new(1.into(), 2.into()));
    let quarter = QuadElem::rational(Q::new(1.into(), 4.into()));
    let mut g = Mat::<QuadElem>::zeros(m, m);
    for i in 0..2 * n - 1 {
        g[(i, i)] = si.clone();
        g[(m - 1 - i, m - 1 - i)] = s.clone();
    }
    let c = 2 * n - 1;
    let block = [
        [-(half.clone() * si.clone()), si.clone(), si.clone()],
        [half.clone(), QuadElem::zero(), QuadElem::one()],
        [quarter * s.clone(), half.clone() * s.clone(), -(half * s)],
    ];
    for (r, row) in block.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            g[(c + r, c + k)] = v.clone();
        }
    }
    SimilitudeMatrix::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qf};

    #[test]
    fn elementary_examples() {
        let g = so_elementary(4, 1, 2, &q(1)).unwrap();
        let mut want = Mat::<Q>::identity(4);
        want[(0, 1)] = q(1);
        want[(2, 3)] = q(-1);
        assert_eq!(g.matrix(), &want);
        assert!(so_elementary(4, 2, 3, &q(0)).unwrap().matrix().is_identity());
        assert!(so_elementary(4, 2, 2, &q(1)).is_err());
    }

    #[test]
    fn odd_middle_correction() {
        // e'_{13} in SO_5 squares to -e_{15}.
        let g = so_elementary(5, 1, 3, &q(1)).unwrap();
        assert_eq!(g.matrix()[(0, 4)], qf(-1, 2));
        // e'_{14} squares to zero, no correction.
        let g = so_elementary(5, 1, 4, &q(1)).unwrap();
        assert_eq!(g.matrix()[(0, 4)], q(0));
        assert_eq!(g.lambda(), &q(1));
    }

    #[test]
    fn inverse_is_inverse() {
        let g = so_elementary(7, 2, 4, &qf(3, 5)).unwrap();
        let h = so_elementary(7, 1, 5, &q(-2)).unwrap();
        let x = g.mul(&h);
        assert!(x.mul(&x.inverse()).matrix().is_identity());
    }

    #[test]
    fn h_a_similitude() {
        for a in [1, 2, 3, 5, -1] {
            for n in 2..4 {
                let h = h_a_matrix(n, n, &q(a)).unwrap();
                assert_eq!(h.lambda(), &QuadElem::one());
            }
        }
        let h = h_a_matrix(2, 2, &q(1)).unwrap();
        assert!(h.matrix().to_rows().iter().flatten().all(|x| x.is_rational()));
        assert!(h_a_matrix(2, 2, &q(0)).is_err());
    }

    #[test]
    fn monomial_rejects_non_similitude() {
        assert!(monomial::<Q>(&[2, 1, 3], &[1, 1, 1]).is_err());
        assert!(monomial::<Q>(&[3, 2, 1], &[1, 1, 1]).is_ok());
    }
}
