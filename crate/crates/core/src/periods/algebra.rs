//! Strictly upper triangular `so_m` in the coordinates `u_{ij}`, `i < j ≤ m−i`,
//! its subalgebras and linear characters on them.

use super::PeriodError;
use crate::arith::{Field, Q};
use crate::linalg::{dot, rref, Mat, Subspace};
use crate::similitude::{e_prime, SimilitudeMatrix};
use num::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Coordinate data for the strictly upper part of `so_m`: the index of each
/// `(i, j)` and the structure constants of the basis `e′_{ij}`.
#[derive(Debug)]
pub struct Ambient {
    m: usize,
    coords: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    brackets: Vec<Vec<(usize, i64)>>,
}

impl Ambient {
    /// Shared table for size `m` (built once per size).
    pub fn get(m: usize) -> Arc<Ambient> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Ambient>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut c = cache.lock().expect("ambient cache poisoned");
        c.entry(m).or_insert_with(|| Arc::new(Ambient::build(m))).clone()
    }

    fn build(m: usize) -> Ambient {
        let coords: Vec<(usize, usize)> = (1..=m)
            .flat_map(|i| (i + 1..=m.saturating_sub(i)).map(move |j| (i, j)))
            .collect();
        let index: HashMap<_, _> = coords.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let n = coords.len();
        let mats: Vec<Mat<Q>> = coords.iter().map(|&(i, j)| e_prime::<Q>(m, i, j)).collect();
        let mut brackets = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in a + 1..n {
                let c = mats[a].bracket(&mats[b]);
                if c.is_zero() {
                    continue;
                }
                let mut entries = Vec::new();
                for (k, &(i, j)) in coords.iter().enumerate() {
                    let v = &c[(i - 1, j - 1)];
                    if !v.is_zero() {
                        let v: i64 = v.to_integer().try_into().expect("small structure constant");
                        entries.push((k, v));
                    }
                }
                let neg = entries.iter().map(|&(k, v)| (k, -v)).collect();
                brackets[a * n + b] = entries;
                brackets[b * n + a] = neg;
            }
        }
        Ambient { m, coords, index, brackets }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[(usize, usize)] {
        &self.coords
    }

    /// Position of the coordinate `u_{ij}`; mirrored pairs `(m+1−j, m+1−i)`
    /// are not accepted here.
    pub fn index(&self, i: usize, j: usize) -> Result<usize, PeriodError> {
        self.index
            .get(&(i, j))
            .copied()
            .ok_or_else(|| PeriodError::Coordinate(format!("({i},{j}) is not a coordinate for m={}", self.m)))
    }

    pub fn unit(&self, i: usize, j: usize) -> Result<Vec<Q>, PeriodError> {
        let mut v = vec![Q::zero(); self.dim()];
        v[self.index(i, j)?] = Q::one();
        Ok(v)
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let entries = &self.brackets[a * n + b];
                if entries.is_empty() {
                    continue;
                }
                let f = xa * yb;
                for &(k, c) in entries {
                    out[k] += &f * Q::from_integer(c.into());
                }
            }
        }
        out
    }

    pub fn to_matrix<F: Field>(&self, x: &[Q]) -> Mat<F> {
        let mut mat = Mat::<F>::zeros(self.m, self.m);
        for (&(i, j), v) in self.coords.iter().zip(x) {
            if v.is_zero() {
                continue;
            }
            let f = F::from_q(v.clone());
            mat[(i - 1, j - 1)] = mat[(i - 1, j - 1)].clone() + f.clone();
            mat[(self.m - j, self.m - i)] = mat[(self.m - j, self.m - i)].clone() - f;
        }
        mat
    }

    /// As [`Ambient::to_matrix`], for coordinates already in `F`.
    pub fn to_matrix_lifted<F: Field>(&self, x: &[F]) -> Mat<F> {
        let mut mat = Mat::<F>::zeros(self.m, self.m);
        for (&(i, j), v) in self.coords.iter().zip(x) {
            mat[(i - 1, j - 1)] = mat[(i - 1, j - 1)].clone() + v.clone();
            mat[(self.m - j, self.m - i)] = mat[(self.m - j, self.m - i)].clone() - v.clone();
        }
        mat
    }

    /// Coordinates of a strictly upper triangular element of `so_m`, or an
    /// error naming what fails (not in the ambient space, or not rational).
    pub fn from_matrix<F: Field>(&self, mat: &Mat<F>) -> Result<Vec<Q>, PeriodError> {
        let mut x = Vec::with_capacity(self.dim());
        for &(i, j) in &self.coords {
            let v = &mat[(i - 1, j - 1)];
            x.push(v.to_q().ok_or_else(|| PeriodError::Irrational(format!("entry ({i},{j}) = {v}")))?);
        }
        if &self.to_matrix::<F>(&x) != mat {
            return Err(PeriodError::LeavesAmbient(
                "matrix is not a strictly upper triangular element of so_m".into(),
            ));
        }
        Ok(x)
    }

    /// Coordinates in `F` of a strictly upper triangular element of `so_m`.
    pub fn from_matrix_lifted<F: Field>(&self, mat: &Mat<F>) -> Result<Vec<F>, PeriodError> {
        let x: Vec<F> = self.coords.iter().map(|&(i, j)| mat[(i - 1, j - 1)].clone()).collect();
        if &self.to_matrix_lifted(&x) != mat {
            return Err(PeriodError::LeavesAmbient(
                "matrix is not a strictly upper triangular element of so_m".into(),
            ));
        }
        Ok(x)
    }

    /// `Σ c·u_{ij}` as a coefficient vector.
    pub fn functional(&self, terms: &[((usize, usize), Q)]) -> Result<Vec<Q>, PeriodError> {
        let mut v = vec![Q::zero(); self.dim()];
        for ((i, j), c) in terms {
            v[self.index(*i, *j)?] += c;
        }
        Ok(v)
    }

    pub fn format_vector(&self, x: &[Q]) -> String {
        let parts: Vec<String> = self
            .coords
            .iter()
            .zip(x)
            .filter(|(_, v)| !v.is_zero())
            .map(|(&(i, j), v)| format!("({i},{j}):{v}"))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// A subalgebra of strictly upper triangular `so_m`, stored as the canonical
/// echelon basis of its coordinate span.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NilSubalgebra {
    m: usize,
    space: Subspace<Q>,
}

impl NilSubalgebra {
    /// The span of `vectors`, checked for closure under the bracket.
    pub fn span(m: usize, vectors: &[Vec<Q>]) -> Result<Self, PeriodError> {
        let amb = Ambient::get(m);
        let alg = NilSubalgebra {
            m,
            space: Subspace::span(amb.dim(), vectors),
        };
        alg.check_closed()?;
        Ok(alg)
    }

    /// The subspace cut out by linear equations on the coordinates.
    pub fn solutions(m: usize, equations: &[Vec<Q>]) -> Result<Self, PeriodError> {
        let amb = Ambient::get(m);
        let alg = NilSubalgebra {
            m,
            space: Subspace::solutions(amb.dim(), equations),
        };
        alg.check_closed()?;
        Ok(alg)
    }

    pub fn full(m: usize) -> Self {
        NilSubalgebra {
            m,
            space: Subspace::full(Ambient::get(m).dim()),
        }
    }

    pub fn zero(m: usize) -> Self {
        NilSubalgebra {
            m,
            space: Subspace::zero(Ambient::get(m).dim()),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ambient(&self) -> Arc<Ambient> {
        Ambient::get(self.m)
    }

    pub fn space(&self) -> &Subspace<Q> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        self.space.basis()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.space.contains(x)
    }

    pub fn is_subalgebra_of(&self, o: &NilSubalgebra) -> bool {
        self.m == o.m && self.space.is_subspace_of(&o.space)
    }

    pub fn intersect(&self, o: &NilSubalgebra) -> NilSubalgebra {
        NilSubalgebra {
            m: self.m,
            space: self.space.intersect(&o.space),
        }
    }

    /// The first bracket of two basis elements falling outside the span.
    pub fn closure_witness(&self) -> Option<(Vec<Q>, Vec<Q>)> {
        let amb = self.ambient();
        let b = self.basis();
        for (k, x) in b.iter().enumerate() {
            for y in &b[k + 1..] {
                if !self.contains(&amb.bracket(x, y)) {
                    return Some((x.clone(), y.clone()));
                }
            }
        }
        None
    }

    fn check_closed(&self) -> Result<(), PeriodError> {
        match self.closure_witness() {
            None => Ok(()),
            Some((x, y)) => {
                let amb = self.ambient();
                Err(PeriodError::NotClosed(format!(
                    "[{}, {}] leaves the span",
                    amb.format_vector(&x),
                    amb.format_vector(&y)
                )))
            }
        }
    }

    /// Span of all brackets `[X, Y]` with `X` in `self`, `Y` in `o`.
    pub fn bracket_span(&self, o: &NilSubalgebra) -> Subspace<Q> {
        let amb = self.ambient();
        let mut v = Vec::new();
        for x in self.basis() {
            for y in o.basis() {
                let z = amb.bracket(x, y);
                if z.iter().any(|c| !c.is_zero()) {
                    v.push(z);
                }
            }
        }
        Subspace::span(amb.dim(), &v)
    }

    pub fn derived(&self) -> Subspace<Q> {
        self.bracket_span(self)
    }

    /// One line listing the echelon basis.
    pub fn describe(&self) -> String {
        let amb = self.ambient();
        let rows: Vec<String> = self.basis().iter().map(|b| amb.format_vector(b)).collect();
        format!("dim {} [{}]", self.dim(), rows.join(" "))
    }
}

/// A linear functional on the coordinate space, `X ↦ Σ c_{ij} X_{ij}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterFunctional {
    m: usize,
    coeffs: Vec<Q>,
}

impl CharacterFunctional {
    pub fn new(m: usize, coeffs: Vec<Q>) -> Result<Self, PeriodError> {
        let amb = Ambient::get(m);
        if coeffs.len() != amb.dim() {
            return Err(PeriodError::Coordinate(format!(
                "functional has {} coefficients, expected {}",
                coeffs.len(),
                amb.dim()
            )));
        }
        Ok(CharacterFunctional { m, coeffs })
    }

    pub fn from_terms(m: usize, terms: &[((usize, usize), Q)]) -> Result<Self, PeriodError> {
        let v = Ambient::get(m).functional(terms)?;
        CharacterFunctional::new(m, v)
    }

    pub fn zero(m: usize) -> Self {
        CharacterFunctional {
            m,
            coeffs: vec![Q::zero(); Ambient::get(m).dim()],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> Result<Q, PeriodError> {
        Ok(self.coeffs[Ambient::get(self.m).index(i, j)?].clone())
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        dot(&self.coeffs, x)
    }

    /// The canonical representative modulo the annihilator of `alg`: supported
    /// on the pivot coordinates, with the same values on `alg`.
    pub fn reduce(&self, alg: &NilSubalgebra) -> CharacterFunctional {
        let mut coeffs = vec![Q::zero(); self.coeffs.len()];
        for (b, &p) in alg.basis().iter().zip(alg.space().pivots()) {
            coeffs[p] = self.eval(b);
        }
        CharacterFunctional { m: self.m, coeffs }
    }

    pub fn add(&self, o: &CharacterFunctional) -> CharacterFunctional {
        CharacterFunctional {
            m: self.m,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> CharacterFunctional {
        CharacterFunctional {
            m: self.m,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Display for CharacterFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Ambient::get(self.m).format_vector(&self.coeffs))
    }
}

/// A subalgebra together with a character of it. The character is kept in
/// canonical reduced form, so equality is equality of periods.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPeriod {
    algebra: NilSubalgebra,
    character: CharacterFunctional,
}

impl UniPeriod {
    /// Pairs an algebra with a functional, checking that the functional
    /// vanishes on the derived algebra.
    pub fn new(algebra: NilSubalgebra, character: &CharacterFunctional) -> Result<Self, PeriodError> {
        if algebra.m != character.m {
            return Err(PeriodError::Coordinate("algebra and character have different sizes".into()));
        }
        let character = character.reduce(&algebra);
        let p = UniPeriod { algebra, character };
        p.check_character()?;
        Ok(p)
    }

    pub fn m(&self) -> usize {
        self.algebra.m
    }

    pub fn algebra(&self) -> &NilSubalgebra {
        &self.algebra
    }

    pub fn character(&self) -> &CharacterFunctional {
        &self.character
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Value of the character on an element of the algebra.
    pub fn eval(&self, x: &[Q]) -> Q {
        self.character.eval(x)
    }

    fn check_character(&self) -> Result<(), PeriodError> {
        let amb = self.algebra.ambient();
        let b = self.algebra.basis();
        for (k, x) in b.iter().enumerate() {
            for y in &b[k + 1..] {
                let z = amb.bracket(x, y);
                let v = self.eval(&z);
                if !v.is_zero() {
                    return Err(PeriodError::CharacterNotTrivialOnDerived(format!(
                        "value {v} on [{}, {}]",
                        amb.format_vector(x),
                        amb.format_vector(y)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether `self`'s algebra lies in `o`'s and the characters agree there.
    pub fn is_restriction_of(&self, o: &UniPeriod) -> bool {
        self.algebra.is_subalgebra_of(&o.algebra)
            && self.algebra.basis().iter().all(|b| self.eval(b) == o.eval(b))
    }

    /// The restriction to a subalgebra.
    pub fn restrict(&self, sub: &NilSubalgebra) -> Result<UniPeriod, PeriodError> {
        if !sub.is_subalgebra_of(&self.algebra) {
            return Err(PeriodError::Precondition("restriction target is not a subalgebra".into()));
        }
        UniPeriod::new(sub.clone(), &self.character)
    }

    pub fn describe(&self) -> String {
        format!("{} psi {}", self.algebra.describe(), self.character)
    }
}

/// Conjugation `g·(𝔲, ψ) = (g𝔲g⁻¹, X ↦ ψ(g⁻¹Xg))`. Entries of the result must
/// be rational; `g` may have entries in a quadratic extension.
pub fn conjugate_period<F: Field>(g: &SimilitudeMatrix<F>, p: &UniPeriod) -> Result<UniPeriod, PeriodError> {
    let amb = p.algebra.ambient();
    if g.size() != amb.m() {
        return Err(PeriodError::Coordinate(format!(
            "matrix of size {} acting on so_{}",
            g.size(),
            amb.m()
        )));
    }
    let gi = g.inverse();
    let n = amb.dim();
    let mut graph = Vec::with_capacity(p.dim());
    for b in p.algebra.basis() {
        let x = amb.to_matrix::<F>(b);
        let y = g.matrix().mul(&x).mul(gi.matrix());
        let mut row = amb.from_matrix_lifted(&y)?;
        row.push(F::from_q(p.eval(b)));
        graph.push(row);
    }
    // Echelonizing the graph of ψ gives the new basis and the values on it.
    // A rational period has a rational echelon form even when `g` is not
    // rational.
    let (rows, pivots) = rref(&graph, n + 1);
    if pivots.last() == Some(&n) {
        return Err(PeriodError::LeavesAmbient("conjugated basis is degenerate".into()));
    }
    let rows: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(k, v)| {
                    v.to_q().ok_or_else(|| {
                        let what = amb.coords().get(k).map_or("character value".to_string(), |(i, j)| format!("({i},{j})"));
                        PeriodError::Irrational(format!("{what} = {v}"))
                    })
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let vectors: Vec<Vec<Q>> = rows.iter().map(|r| r[..n].to_vec()).collect();
    let algebra = NilSubalgebra::span(amb.m(), &vectors)?;
    let mut coeffs = vec![Q::zero(); n];
    for (r, &piv) in rows.iter().zip(&pivots) {
        coeffs[piv] = r[n].clone();
    }
    UniPeriod::new(algebra, &CharacterFunctional::new(amb.m(), coeffs)?)
}

/// Log of a unipotent matrix, `None` if `g − I` is not nilpotent.
pub fn unipotent_log<F: Field>(g: &Mat<F>) -> Option<Mat<F>> {
    let m = g.rows();
    let nil = g.sub(&Mat::identity(m));
    let mut out = Mat::<F>::zeros(m, m);
    let mut power = nil.clone();
    for k in 1..=m {
        if power.is_zero() {
            return Some(out);
        }
        let c = F::from_q(Q::new(if k % 2 == 1 { 1 } else { -1 }.into(), (k as i64).into()));
        out = out.add(&power.scale(&c));
        power = power.mul(&nil);
    }
    power.is_zero().then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn coordinate_counts() {
        // Positive roots of B_n and D_n.
        assert_eq!(Ambient::get(9).dim(), 16);
        assert_eq!(Ambient::get(8).dim(), 12);
        assert_eq!(Ambient::get(13).dim(), 36);
    }

    #[test]
    fn bracket_matches_matrices() {
        let amb = Ambient::get(7);
        let n = amb.dim();
        for a in 0..n {
            for b in 0..n {
                let x = crate::linalg::unit_vector::<Q>(n, a);
                let y = crate::linalg::unit_vector::<Q>(n, b);
                let want = amb.to_matrix::<Q>(&x).bracket(&amb.to_matrix::<Q>(&y));
                assert_eq!(amb.to_matrix::<Q>(&amb.bracket(&x, &y)), want);
            }
        }
    }

    #[test]
    fn closure_is_checked() {
        let amb = Ambient::get(6);
        let v = vec![amb.unit(1, 2).unwrap(), amb.unit(2, 3).unwrap()];
        assert!(NilSubalgebra::span(6, &v).is_err());
        let v = vec![amb.unit(1, 2).unwrap(), amb.unit(2, 3).unwrap(), amb.unit(1, 3).unwrap()];
        assert!(NilSubalgebra::span(6, &v).is_ok());
    }

    #[test]
    fn identity_conjugation() {
        let alg = NilSubalgebra::full(7);
        let psi = CharacterFunctional::from_terms(7, &[((1, 2), q(1)), ((2, 3), q(3))]).unwrap();
        let p = UniPeriod::new(alg, &psi).unwrap();
        let g = SimilitudeMatrix::<Q>::identity(7);
        assert_eq!(conjugate_period(&g, &p).unwrap(), p);
        let bad = CharacterFunctional::from_terms(7, &[((1, 3), q(1))]).unwrap();
        assert!(UniPeriod::new(NilSubalgebra::full(7), &bad).is_err());
    }

    #[test]
    fn log_of_elementary() {
        let g = crate::similitude::so_elementary(5, 1, 3, &q(2)).unwrap();
        let x = unipotent_log(g.matrix()).unwrap();
        assert_eq!(x, e_prime::<Q>(5, 1, 3).scale(&q(2)));
    }
}
