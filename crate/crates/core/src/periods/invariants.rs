//! Orbit invariants of characters of `N_ℓ` and the unipotent pattern of the
//! stabilizer of `Ψ_n^a`.

use super::algebra::{conjugate_period, Ambient, NilSubalgebra, UniPeriod};
use super::standard::{make_standard_period, n_ell, PeriodRef};
use super::PeriodError;
use crate::arith::{q, square_class_of, Field, QuadElem, SquareClass, Q};
use crate::linalg::Subspace;
use crate::similitude::{diagonal, h_a_matrix, so_elementary, SimilitudeMatrix};
use num::{One, Zero};
use rand::Rng;
use std::fmt;

/// Square class of `ᵗd·J·d`, or `Isotropic` when that value is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Invt {
    Class(SquareClass),
    Isotropic,
}

impl fmt::Display for Invt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invt::Class(c) => write!(f, "{c}"),
            Invt::Isotropic => write!(f, "isotropic"),
        }
    }
}

/// The `ℓ` with `p.algebra() = N_ℓ`, among `1 ≤ ℓ < m/2`.
pub fn descent_level(p: &UniPeriod) -> Result<usize, PeriodError> {
    let m = p.m();
    (1..=(m - 1) / 2)
        .find(|&l| &n_ell(m, l) == p.algebra())
        .ok_or_else(|| PeriodError::Precondition(format!("algebra is not some N_l: {}", p.algebra().describe())))
}

/// Coefficients `(c, d)`: `c_i` on `u_{i,i+1}` for `i < ℓ`, and `d` on
/// `u_{ℓ,ℓ+1}, …, u_{ℓ,m−ℓ}`.
pub fn character_coordinates(p: &UniPeriod) -> Result<(Vec<Q>, Vec<Q>), PeriodError> {
    let l = descent_level(p)?;
    let m = p.m();
    let ch = p.character();
    let c = (1..l).map(|i| ch.coeff(i, i + 1)).collect::<Result<Vec<_>, _>>()?;
    let d = (l + 1..=m - l).map(|j| ch.coeff(l, j)).collect::<Result<Vec<_>, _>>()?;
    Ok((c, d))
}

fn antidiagonal_norm(d: &[Q]) -> Q {
    d.iter().zip(d.iter().rev()).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn invt(p: &UniPeriod) -> Result<Invt, PeriodError> {
    let (_, d) = character_coordinates(p)?;
    let v = antidiagonal_norm(&d);
    if v.is_zero() {
        Ok(Invt::Isotropic)
    } else {
        Ok(Invt::Class(square_class_of(&v)?))
    }
}

pub fn general_position(p: &UniPeriod) -> Result<bool, PeriodError> {
    let (c, _) = character_coordinates(p)?;
    Ok(c.iter().all(|x| !x.is_zero()) && invt(p)? != Invt::Isotropic)
}

/// Whether `Ad(h_a)` carries `Ψ_ℓ` exactly onto `Ψ_ℓ^a` in `so_{4n+1}`.
pub fn h_a_carries_psi(n: usize, ell: usize, a: &Q) -> Result<bool, PeriodError> {
    let m = 4 * n + 1;
    let l = q(ell as i64);
    let psi = make_standard_period(&PeriodRef::new("even.Psi", &[("ell", l.clone())]), m)?;
    let want = make_standard_period(&PeriodRef::new("even.PsiA", &[("ell", l), ("a", a.clone())]), m)?;
    let h = h_a_matrix(n, ell, a)?;
    Ok(conjugate_period(&h, &psi)? == want)
}

/// A random element `diag(α_1, …, α_ℓ, g′, α_ℓ⁻¹, …, α_1⁻¹)` of `L_ℓ ⊂ SO_m`,
/// with `g′` a product of `words` elementary elements of the middle `SO_{m−2ℓ}`.
pub fn random_levi_element<R: Rng + ?Sized>(m: usize, ell: usize, words: usize, rng: &mut R) -> SimilitudeMatrix<Q> {
    let mut d = vec![Q::one(); m];
    for i in 0..ell {
        let mut x = Q::zero();
        while x.is_zero() {
            x = Q::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into());
        }
        d[m - 1 - i] = x.recip();
        d[i] = x;
    }
    let mut g = diagonal(&d).expect("torus element");
    let (lo, hi) = (ell + 1, m - ell);
    if hi > lo {
        for _ in 0..words {
            let i = rng.gen_range(lo..=hi);
            let j = rng.gen_range(lo..=hi);
            if i == j || i + j == m + 1 {
                continue;
            }
            let a = Q::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=2).into());
            g = g.mul(&so_elementary(m, i, j, &a).expect("valid indices"));
        }
    }
    g
}

/// Outcome of [`stabilizer_check_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerReport {
    /// `Ad(h_a)` of the split pattern equals the candidate pattern.
    pub pattern_matches: bool,
    /// The candidate normalizes `N_n` and fixes the character of `Ψ_n^a`.
    pub fixes_character: bool,
    pub diagnostics: Vec<String>,
}

impl StabilizerReport {
    pub fn ok(&self) -> bool {
        self.pattern_matches && self.fixes_character
    }
}

/// `u_{ij} = 0` for `i ≤ n` or `j = 2n+1`: the upper triangular part of the
/// stabilizer of `Ψ_n` in `so_{4n+1}`.
pub fn split_stabilizer_pattern(n: usize) -> Result<NilSubalgebra, PeriodError> {
    let m = 4 * n + 1;
    let amb = Ambient::get(m);
    let eqs = amb
        .coords()
        .iter()
        .filter(|&&(i, j)| i <= n || j == 2 * n + 1)
        .map(|&c| amb.functional(&[(c, Q::one())]))
        .collect::<Result<Vec<_>, _>>()?;
    NilSubalgebra::solutions(m, &eqs)
}

/// `u_{ij} = 0` for `i ≤ n` or `i = 2n`, and `u_{i,2n} = c·u_{i,2n+2}` for
/// `n < i < 2n`.
pub fn twisted_stabilizer_pattern(n: usize, c: &Q) -> Result<NilSubalgebra, PeriodError> {
    let m = 4 * n + 1;
    let amb = Ambient::get(m);
    let mut eqs = Vec::new();
    for &(i, j) in amb.coords() {
        if i <= n || i == 2 * n {
            eqs.push(amb.functional(&[((i, j), Q::one())])?);
        }
    }
    for i in n + 1..2 * n {
        eqs.push(amb.functional(&[((i, 2 * n), Q::one()), ((i, 2 * n + 2), -c.clone())])?);
    }
    NilSubalgebra::solutions(m, &eqs)
}

/// Checks the candidate pattern with relation coefficient `c` against the
/// stabilizer of `Ψ_n^a`, computing `Ad(h_a)` over `ℚ(√a)`.
pub fn stabilizer_check_with(a: &Q, n: usize, c: &Q) -> Result<StabilizerReport, PeriodError> {
    if n < 2 {
        return Err(PeriodError::Params(format!("need n >= 2, got {n}")));
    }
    let m = 4 * n + 1;
    let amb = Ambient::get(m);
    let mut diagnostics = Vec::new();

    let split = split_stabilizer_pattern(n)?;
    let twisted = twisted_stabilizer_pattern(n, c)?;
    let h = h_a_matrix(n, n, a)?;
    let hi = h.inverse();
    let lift = |v: &[Q]| v.iter().map(|x| QuadElem::from_q(x.clone())).collect::<Vec<_>>();
    let mut images = Vec::new();
    for b in split.basis() {
        let x = amb.to_matrix::<QuadElem>(b);
        let y = h.matrix().mul(&x).mul(hi.matrix());
        let row: Vec<QuadElem> = amb.coords().iter().map(|&(i, j)| y[(i - 1, j - 1)].clone()).collect();
        if amb.to_matrix_lifted(&row) != y {
            diagnostics.push(format!("Ad(h_a) moves {} out of the upper triangle", amb.format_vector(b)));
        }
        images.push(row);
    }
    let conj = Subspace::span(amb.dim(), &images);
    let target_vectors: Vec<Vec<QuadElem>> = twisted.basis().iter().map(|b| lift(b)).collect();
    let target = Subspace::span(amb.dim(), &target_vectors);
    let pattern_matches = diagnostics.is_empty() && conj == target;
    if !pattern_matches && conj != target {
        diagnostics.push(format!(
            "Ad(h_a) of the split pattern has dim {}, candidate has dim {}, intersection dim {}",
            conj.dim(),
            target.dim(),
            conj.intersect(&target).dim()
        ));
    }

    let psi = make_standard_period(&PeriodRef::new("even.PsiA", &[("ell", q(n as i64)), ("a", a.clone())]), m)?;
    let nn = psi.algebra();
    let mut fixes_character = true;
    'outer: for x in twisted.basis() {
        for z in nn.basis() {
            let br = amb.bracket(x, z);
            if !nn.contains(&br) {
                diagnostics.push(format!("[{}, {}] leaves N_n", amb.format_vector(x), amb.format_vector(z)));
                fixes_character = false;
                break 'outer;
            }
            if !psi.eval(&br).is_zero() {
                diagnostics.push(format!(
                    "character moves under {}: value {} on [.,{}]",
                    amb.format_vector(x),
                    psi.eval(&br),
                    amb.format_vector(z)
                ));
                fixes_character = false;
                break 'outer;
            }
        }
    }
    Ok(StabilizerReport { pattern_matches, fixes_character, diagnostics })
}

/// The unipotent pattern of the stabilizer of `Ψ_n^a`, with relation
/// `u_{i,2n} = −(a/2)·u_{i,2n+2}`.
pub fn stabilizer_check(a: &Q, n: usize) -> Result<StabilizerReport, PeriodError> {
    stabilizer_check_with(a, n, &(-a / q(2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi(kind: &str, n: usize, a: Option<i64>) -> UniPeriod {
        let mut params = vec![("ell", q(n as i64))];
        if let Some(a) = a {
            params.push(("a", q(a)));
        }
        make_standard_period(&PeriodRef::new(kind, &params), 4 * n + 1).unwrap()
    }

    #[test]
    fn invariant_of_standard_characters() {
        assert_eq!(invt(&psi("even.Psi", 2, None)).unwrap(), Invt::Class(SquareClass::square()));
        for a in [1, 2, 3, 5, 12] {
            let p = psi("even.PsiA", 2, Some(a));
            assert_eq!(invt(&p).unwrap(), Invt::Class(square_class_of(&q(a)).unwrap()));
            assert!(general_position(&p).unwrap());
        }
    }

    #[test]
    fn zero_tail_is_isotropic() {
        let m = 9;
        let p = UniPeriod::new(
            n_ell(m, 2),
            &crate::periods::CharacterFunctional::from_terms(m, &[((1, 2), Q::one())]).unwrap(),
        )
        .unwrap();
        assert_eq!(invt(&p).unwrap(), Invt::Isotropic);
        assert!(!general_position(&p).unwrap());
    }

    #[test]
    fn rejects_other_algebras() {
        let p = make_standard_period(&"odd.U1".parse().unwrap(), 8).unwrap();
        assert!(invt(&p).is_err());
    }

    #[test]
    fn h_a_identity() {
        for n in [2, 3] {
            for a in [1, 2, 3, 5] {
                assert!(h_a_carries_psi(n, n, &q(a)).unwrap(), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn invt_under_levi() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let p = psi("even.PsiA", 2, Some(3));
        let want = invt(&p).unwrap();
        for _ in 0..20 {
            let g = random_levi_element(9, 2, 6, &mut rng);
            let moved = conjugate_period(&g, &p).unwrap();
            assert_eq!(invt(&moved).unwrap(), want);
        }
    }

    #[test]
    fn stabilizer_pattern() {
        for a in [1, 2, 3] {
            let r = stabilizer_check(&q(a), 2).unwrap();
            assert!(r.ok(), "a={a}: {:?}", r.diagnostics);
        }
        let bad = stabilizer_check_with(&q(2), 2, &q(-2)).unwrap();
        assert!(!bad.ok());
    }
}
