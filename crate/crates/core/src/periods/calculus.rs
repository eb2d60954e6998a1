//! Swaps and Fourier expansions of unipotent periods.

use super::algebra::{unipotent_log, Ambient, CharacterFunctional, NilSubalgebra, UniPeriod};
use super::PeriodError;
use crate::arith::{Field, Q};
use crate::linalg::{kernel, rank, rref, Mat, Subspace};
use crate::similitude::SimilitudeMatrix;
use num::Zero;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SwapClause {
    /// The two periods live in the same ambient algebra.
    Ambient,
    /// `ψ₁` and `ψ₃` agree on `𝔲₂ = 𝔲₁ ∩ 𝔲₃`.
    Agreement,
    /// `[𝔲₁, 𝔲₁]` and `[𝔲₃, 𝔲₃]` lie in `𝔲₂`.
    Derived,
    /// `[𝔲₁, 𝔲₃] ⊆ 𝔲₂`, so each algebra normalizes the other.
    Normalization,
    /// `(X, Z) ↦ ψ₂([X, Z])` is perfect on `𝔲₁/𝔲₂ × 𝔲₃/𝔲₂`.
    Pairing,
}

impl fmt::Display for SwapClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SwapClause::Ambient => "ambient",
            SwapClause::Agreement => "agreement",
            SwapClause::Derived => "derived",
            SwapClause::Normalization => "normalization",
            SwapClause::Pairing => "pairing",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapCertificate {
    pub dim_u1: usize,
    pub dim_u2: usize,
    pub dim_u3: usize,
    /// Rank of the commutator pairing (equal to `dim 𝔲₁ − dim 𝔲₂`).
    pub pairing_rank: usize,
    pub swapped: UniPeriod,
}

fn swap_failure(clause: SwapClause, detail: String) -> PeriodError {
    PeriodError::Swap { clause, detail }
}

/// Certifies that `p1` may be swapped for `(target, target_char)`.
pub fn check_swap(
    p1: &UniPeriod,
    target: &NilSubalgebra,
    target_char: &CharacterFunctional,
) -> Result<SwapCertificate, PeriodError> {
    if p1.m() != target.m() || target.m() != target_char.m() {
        return Err(swap_failure(SwapClause::Ambient, "different ambient sizes".into()));
    }
    let p3 = UniPeriod::new(target.clone(), target_char)?;
    let amb = target.ambient();
    let u1 = p1.algebra();
    let u2 = u1.intersect(target);
    for b in u2.basis() {
        if p1.eval(b) != p3.eval(b) {
            return Err(swap_failure(
                SwapClause::Agreement,
                format!("{} vs {} on {}", p1.eval(b), p3.eval(b), amb.format_vector(b)),
            ));
        }
    }
    for (name, u) in [("u1", u1), ("u3", target)] {
        for z in u.derived().basis() {
            if !u2.contains(z) {
                return Err(swap_failure(
                    SwapClause::Derived,
                    format!("[{name},{name}] contains {} outside u1∩u3", amb.format_vector(z)),
                ));
            }
        }
    }
    for x in u1.basis() {
        for z in target.basis() {
            let c = amb.bracket(x, z);
            if !u2.contains(&c) {
                return Err(swap_failure(
                    SwapClause::Normalization,
                    format!(
                        "[{}, {}] = {} outside u1∩u3",
                        amb.format_vector(x),
                        amb.format_vector(z),
                        amb.format_vector(&c)
                    ),
                ));
            }
        }
    }
    let xs = u1.space().complement_of(u2.space());
    let zs = target.space().complement_of(u2.space());
    if xs.len() != zs.len() {
        return Err(swap_failure(
            SwapClause::Pairing,
            format!("quotients have dimensions {} and {}", xs.len(), zs.len()),
        ));
    }
    let pairing: Vec<Vec<Q>> = xs
        .iter()
        .map(|x| zs.iter().map(|z| p1.eval(&amb.bracket(x, z))).collect())
        .collect();
    let r = rank(&pairing, zs.len());
    if r < xs.len() {
        let k = kernel(&pairing, zs.len());
        let w: Vec<Q> = k[0].clone();
        let mut z = vec![Q::zero(); amb.dim()];
        for (c, zi) in w.iter().zip(&zs) {
            for (acc, v) in z.iter_mut().zip(zi) {
                *acc += c * v;
            }
        }
        return Err(swap_failure(
            SwapClause::Pairing,
            format!("rank {r} < {}; {} pairs to zero with u1", xs.len(), amb.format_vector(&z)),
        ));
    }
    Ok(SwapCertificate {
        dim_u1: u1.dim(),
        dim_u2: u2.dim(),
        dim_u3: target.dim(),
        pairing_rank: r,
        swapped: p3,
    })
}

/// Builds the period on the span of `vectors` with the prescribed values.
pub fn period_from_values(m: usize, vectors: &[Vec<Q>], values: &[Q]) -> Result<UniPeriod, PeriodError> {
    let n = Ambient::get(m).dim();
    let graph: Vec<Vec<Q>> = vectors
        .iter()
        .zip(values)
        .map(|(v, c)| {
            let mut r = v.clone();
            r.push(c.clone());
            r
        })
        .collect();
    let (rows, pivots) = rref(&graph, n + 1);
    if pivots.last() == Some(&n) {
        return Err(PeriodError::Precondition("values are inconsistent on the span".into()));
    }
    let basis: Vec<Vec<Q>> = rows.iter().map(|r| r[..n].to_vec()).collect();
    let mut coeffs = vec![Q::zero(); n];
    for (r, &p) in rows.iter().zip(&pivots) {
        coeffs[p] = r[n].clone();
    }
    UniPeriod::new(NilSubalgebra::span(m, &basis)?, &CharacterFunctional::new(m, coeffs)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transitivity {
    /// The generator tangents span every extension direction.
    Transitive,
    /// Tangents span a proper subspace; `residual` is the codimension.
    Partial { residual: usize },
    /// No generators were supplied.
    Unknown,
}

/// The affine space of characters of `big` restricting to a given character
/// of `small`, with the linear data of a group action on it.
#[derive(Clone, Debug)]
pub struct ExtensionFamily {
    pub small: UniPeriod,
    /// Extension by zero along `directions`.
    pub base: UniPeriod,
    /// Basis of `𝔲_big` modulo `𝔲_small`; an extension is fixed by its values here.
    pub directions: Vec<Vec<Q>>,
    /// Per generator, the derivative at `base` of its action, in the
    /// coordinates given by `directions`.
    pub tangents: Vec<Vec<Q>>,
    /// Whether every generator acts by translations.
    pub translations: bool,
    pub verdict: Transitivity,
    /// Classes of a finite sample of extensions modulo the tangent span,
    /// as lists of indices into `sample`.
    pub sample: Vec<Vec<Q>>,
    pub sample_classes: Vec<Vec<usize>>,
}

impl ExtensionFamily {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// The extension with values `t` along `directions`.
    pub fn extension(&self, t: &[Q]) -> Result<UniPeriod, PeriodError> {
        let m = self.base.m();
        let mut vectors: Vec<Vec<Q>> = self.small.algebra().basis().to_vec();
        let mut values: Vec<Q> = vectors.iter().map(|b| self.small.eval(b)).collect();
        for (d, v) in self.directions.iter().zip(t) {
            vectors.push(d.clone());
            values.push(v.clone());
        }
        period_from_values(m, &vectors, &values)
    }

    /// Coordinates of an extension (a character of the big algebra) along
    /// `directions`, or `None` if it does not extend the small character.
    pub fn coordinates_of(&self, p: &UniPeriod) -> Option<Vec<Q>> {
        if p.algebra() != self.base.algebra() {
            return None;
        }
        for b in self.small.algebra().basis() {
            if p.eval(b) != self.small.eval(b) {
                return None;
            }
        }
        Some(self.directions.iter().map(|d| p.eval(d)).collect())
    }

    /// Whether `a` and `b` differ by the tangent span.
    pub fn same_class(&self, a: &[Q], b: &[Q]) -> bool {
        let diff: Vec<Q> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        let span = Subspace::span(self.dim(), &self.tangents);
        span.contains(&diff)
    }
}

/// Characters of `big` extending `small`, with the action of the unipotent
/// generators `gens` (each must normalize both algebras and fix the small
/// character).
pub fn fourier_extensions<F: Field>(
    small: &UniPeriod,
    big: &NilSubalgebra,
    gens: &[SimilitudeMatrix<F>],
) -> Result<ExtensionFamily, PeriodError> {
    let amb = big.ambient();
    if !small.algebra().is_subalgebra_of(big) {
        return Err(PeriodError::Fourier("small algebra is not contained in the big one".into()));
    }
    for z in big.derived().basis() {
        if !small.algebra().contains(z) {
            return Err(PeriodError::Fourier(format!(
                "derived algebra of the big algebra has {} outside the small one",
                amb.format_vector(z)
            )));
        }
        if !small.eval(z).is_zero() {
            return Err(PeriodError::Fourier(format!(
                "small character is nonzero on the derived element {}",
                amb.format_vector(z)
            )));
        }
    }
    let directions = big.space().complement_of(small.algebra().space());
    let mut vectors: Vec<Vec<Q>> = small.algebra().basis().to_vec();
    let mut values: Vec<Q> = vectors.iter().map(|b| small.eval(b)).collect();
    for d in &directions {
        vectors.push(d.clone());
        values.push(Q::zero());
    }
    let base = period_from_values(amb.m(), &vectors, &values)?;

    let mut tangents = Vec::new();
    let mut translations = true;
    for (k, g) in gens.iter().enumerate() {
        let x = unipotent_log(g.matrix())
            .ok_or_else(|| PeriodError::Fourier(format!("generator {k} is not unipotent")))?;
        let ad = |v: &[Q]| -> Result<Vec<Q>, PeriodError> {
            let y = amb.to_matrix::<F>(v);
            amb.from_matrix(&x.bracket(&y))
                .map_err(|e| PeriodError::Fourier(format!("generator {k} does not normalize: {e}")))
        };
        for b in small.algebra().basis() {
            let c = ad(b)?;
            if !small.algebra().contains(&c) {
                return Err(PeriodError::Fourier(format!(
                    "generator {k} does not normalize the small algebra: {}",
                    amb.format_vector(&c)
                )));
            }
            if !small.eval(&c).is_zero() {
                return Err(PeriodError::Fourier(format!(
                    "generator {k} moves the small character on {}",
                    amb.format_vector(b)
                )));
            }
        }
        let mut t = Vec::new();
        for d in &directions {
            let c = ad(d)?;
            if !big.contains(&c) {
                return Err(PeriodError::Fourier(format!(
                    "generator {k} does not normalize the big algebra: {}",
                    amb.format_vector(&c)
                )));
            }
            if !small.algebra().contains(&c) {
                translations = false;
            }
            t.push(-base.eval(&c));
        }
        tangents.push(t);
    }
    let r = directions.len();
    let verdict = if gens.is_empty() && r > 0 {
        Transitivity::Unknown
    } else {
        let rk = rank(&tangents, r);
        if rk == r {
            Transitivity::Transitive
        } else {
            Transitivity::Partial { residual: r - rk }
        }
    };
    let mut sample = vec![vec![Q::zero(); r]];
    for i in 0..r {
        for s in [1, -1, 2] {
            let mut t = vec![Q::zero(); r];
            t[i] = Q::from_integer(s.into());
            sample.push(t);
        }
    }
    let mut fam = ExtensionFamily {
        small: small.clone(),
        base,
        directions,
        tangents,
        translations,
        verdict,
        sample,
        sample_classes: Vec::new(),
    };
    let mut classes: Vec<Vec<usize>> = Vec::new();
    if fam.verdict != Transitivity::Unknown {
        for (i, t) in fam.sample.iter().enumerate() {
            match classes.iter_mut().find(|c| fam.same_class(&fam.sample[c[0]], t)) {
                Some(c) => c.push(i),
                None => classes.push(vec![i]),
            }
        }
    }
    fam.sample_classes = classes;
    Ok(fam)
}

/// `Ad(g)` applied to a coordinate vector, when the image stays in the ambient space.
pub fn adjoint<F: Field>(g: &SimilitudeMatrix<F>, x: &[Q]) -> Result<Vec<Q>, PeriodError> {
    let amb = Ambient::get(g.size());
    let y: Mat<F> = g.matrix().mul(&amb.to_matrix::<F>(x)).mul(g.inverse().matrix());
    amb.from_matrix(&y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn period(m: usize, zeros: &[(usize, usize)], psi: &[((usize, usize), i64)]) -> UniPeriod {
        let amb = Ambient::get(m);
        let eqs: Vec<Vec<Q>> = zeros.iter().map(|&(i, j)| amb.unit(i, j).unwrap()).collect();
        let alg = NilSubalgebra::solutions(m, &eqs).unwrap();
        let terms: Vec<_> = psi.iter().map(|&(c, v)| (c, q(v))).collect();
        UniPeriod::new(alg, &CharacterFunctional::from_terms(m, &terms).unwrap()).unwrap()
    }

    #[test]
    fn swap_with_self() {
        let p = period(7, &[], &[((1, 2), 1), ((2, 3), 1)]);
        let c = check_swap(&p, p.algebra(), p.character()).unwrap();
        assert_eq!(c.swapped, p);
        assert_eq!(c.pairing_rank, 0);
    }

    #[test]
    fn root_exchange_in_gl3_block() {
        // In so_6 the algebra with u13 and u12 against the one with u13 and u23,
        // character u13: the pairing [e12, e23] = e13 is perfect.
        let zeros_all: Vec<(usize, usize)> = Ambient::get(6)
            .coords()
            .iter()
            .copied()
            .filter(|c| ![(1, 2), (2, 3), (1, 3)].contains(c))
            .collect();
        let mut z1 = zeros_all.clone();
        z1.push((2, 3));
        let mut z3 = zeros_all.clone();
        z3.push((1, 2));
        let p1 = period(6, &z1, &[((1, 3), 1)]);
        let p3 = period(6, &z3, &[((1, 3), 1)]);
        let c = check_swap(&p1, p3.algebra(), p3.character()).unwrap();
        assert_eq!((c.dim_u1, c.dim_u2, c.dim_u3), (2, 1, 2));
        let back = check_swap(&p3, p1.algebra(), p1.character()).unwrap();
        assert_eq!(back.swapped, p1);
        // With the trivial character the pairing degenerates.
        let p1 = period(6, &z1, &[]);
        let p3 = period(6, &z3, &[]);
        assert!(matches!(
            check_swap(&p1, p3.algebra(), p3.character()),
            Err(PeriodError::Swap { clause: SwapClause::Pairing, .. })
        ));
    }

    #[test]
    fn extensions_along_one_root() {
        let amb = Ambient::get(6);
        let others: Vec<(usize, usize)> = amb
            .coords()
            .iter()
            .copied()
            .filter(|c| ![(1, 2), (2, 3), (1, 3)].contains(c))
            .collect();
        let mut big_zeros = others.clone();
        big_zeros.push((2, 3));
        let mut zs = big_zeros.clone();
        zs.push((1, 2));
        let small = period(6, &zs, &[((1, 3), 1)]);
        let big = period(6, &big_zeros, &[]).algebra().clone();
        let fam = fourier_extensions::<Q>(&small, &big, &[]).unwrap();
        assert_eq!(fam.dim(), 1);
        assert_eq!(fam.verdict, Transitivity::Unknown);
        let g = crate::similitude::so_elementary(6, 2, 3, &q(1)).unwrap();
        let fam = fourier_extensions(&small, &big, &[g]).unwrap();
        assert_eq!(fam.verdict, Transitivity::Transitive);
        assert!(fam.translations);
        assert_eq!(fam.sample_classes.len(), 1);
        let e = fam.extension(&[q(5)]).unwrap();
        assert_eq!(fam.coordinates_of(&e), Some(vec![q(5)]));
    }
}
