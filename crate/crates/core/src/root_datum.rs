//! Based root data of the similitude groups `GSp_{2n}`, `GSO_{2n}` and of
//! their duals `GSpin_{2n+1}`, `GSpin_{2n}`, the outer automorphism `ν`, and
//! modulus-character exponents of Siegel-type parabolics.
//!
//! Vectors are coordinate vectors of length `n+1` in one of two dual bases:
//! `e_0, …, e_n` ([`Basis::E`]) and `e_0^*, …, e_n^*` ([`Basis::EStar`]).
//! For the similitude groups the character lattice is the `e^*` lattice; for
//! the GSpin groups it is the `e` lattice.

use crate::arith::{q, SquareClass, Q};
use thiserror::Error;

pub type LatticeVector = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDatumError {
    #[error("unsupported datum {0:?} with n = {1}")]
    Unsupported(Family, usize),
    #[error("operation needs a GSpinEven datum, got {0:?}")]
    WrongFamily(Family),
    #[error("the split form has no proper rational sublattice")]
    SplitForm,
    #[error("vector has length {got}, expected {want}")]
    Length { got: usize, want: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    GSp,
    GSO,
    GSpinOdd,
    GSpinEven,
}

impl Family {
    pub fn dual(self) -> Family {
        match self {
            Family::GSp => Family::GSpinOdd,
            Family::GSpinOdd => Family::GSp,
            Family::GSO => Family::GSpinEven,
            Family::GSpinEven => Family::GSO,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    E,
    EStar,
}

impl Basis {
    fn other(self) -> Basis {
        match self {
            Basis::E => Basis::EStar,
            Basis::EStar => Basis::E,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Char,
    Cochar,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasedRootDatum {
    pub family: Family,
    pub n: usize,
    /// Basis in which characters (and hence roots) are written.
    pub char_basis: Basis,
    pub simple_roots: Vec<LatticeVector>,
    pub simple_coroots: Vec<LatticeVector>,
    /// Quasi-split label of a `GSpinEven` form; `None` is the split form.
    pub galois_label: Option<SquareClass>,
}

fn unit(n: usize, i: usize) -> LatticeVector {
    let mut v = vec![0; n + 1];
    v[i] = 1;
    v
}

fn comb(n: usize, terms: &[(i64, usize)]) -> LatticeVector {
    let mut v = vec![0; n + 1];
    for &(c, i) in terms {
        v[i] += c;
    }
    v
}

/// The simple roots `Δ^∨` (on the `e^*` lattice) and simple coroots `Δ` (on
/// the `e` lattice) of a similitude group, as tabulated in the paper.
fn similitude_table(symplectic: bool, n: usize) -> (Vec<LatticeVector>, Vec<LatticeVector>) {
    let mut dv: Vec<LatticeVector> = (1..n).map(|i| comb(n, &[(1, i), (-1, i + 1)])).collect();
    let mut d: Vec<LatticeVector> = dv.clone();
    if symplectic {
        dv.push(comb(n, &[(2, n), (-1, 0)]));
        d.push(unit(n, n));
    } else {
        dv.push(comb(n, &[(1, n - 1), (1, n), (-1, 0)]));
        d.push(comb(n, &[(1, n - 1), (1, n)]));
    }
    (dv, d)
}

pub fn build_datum(family: Family, n: usize) -> Result<BasedRootDatum, RootDatumError> {
    let min = match family {
        Family::GSp | Family::GSpinOdd => 1,
        Family::GSO | Family::GSpinEven => 2,
    };
    if n < min {
        return Err(RootDatumError::Unsupported(family, n));
    }
    let symplectic = matches!(family, Family::GSp | Family::GSpinOdd);
    let (dv, d) = similitude_table(symplectic, n);
    let (char_basis, simple_roots, simple_coroots) = match family {
        Family::GSp | Family::GSO => (Basis::EStar, dv, d),
        Family::GSpinOdd | Family::GSpinEven => (Basis::E, d, dv),
    };
    Ok(BasedRootDatum {
        family,
        n,
        char_basis,
        simple_roots,
        simple_coroots,
        galois_label: None,
    })
}

/// A quasi-split `GSpin_{2n}` labelled by a square class (the class of 1 is the split form).
pub fn build_quasi_split(n: usize, label: SquareClass) -> Result<BasedRootDatum, RootDatumError> {
    let mut d = build_datum(Family::GSpinEven, n)?;
    d.galois_label = (!label.is_square()).then_some(label);
    Ok(d)
}

pub fn dual_datum(d: &BasedRootDatum) -> BasedRootDatum {
    BasedRootDatum {
        family: d.family.dual(),
        n: d.n,
        char_basis: d.char_basis.other(),
        simple_roots: d.simple_coroots.clone(),
        simple_coroots: d.simple_roots.clone(),
        galois_label: d.galois_label.clone(),
    }
}

pub fn pairing(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Entry `(i, j)` is `⟨α_j, α_i^∨⟩`.
pub fn cartan_matrix(d: &BasedRootDatum) -> Vec<Vec<i64>> {
    d.simple_coroots
        .iter()
        .map(|cv| d.simple_roots.iter().map(|r| pairing(r, cv)).collect())
        .collect()
}

/// The outer automorphism `ν` of `GSpin_{2n}` on the character (`e`) or
/// cocharacter (`e^*`) lattice.
pub fn outer_nu(
    d: &BasedRootDatum,
    v: &[i64],
    side: Side,
) -> Result<LatticeVector, RootDatumError> {
    if d.family != Family::GSpinEven {
        return Err(RootDatumError::WrongFamily(d.family));
    }
    let n = d.n;
    if v.len() != n + 1 {
        return Err(RootDatumError::Length { got: v.len(), want: n + 1 });
    }
    let mut out = v.to_vec();
    match side {
        // e_n -> -e_n, e_0 -> e_0 + e_n
        Side::Char => out[n] = v[0] - v[n],
        // e_n^* -> e_0^* - e_n^*
        Side::Cochar => {
            out[0] = v[0] + v[n];
            out[n] = -v[n];
        }
    }
    Ok(out)
}

/// Spanning sets of the rational character and cocharacter lattices of the
/// quasi-split non-split `GSpin_{2n}`.
pub fn rational_sublattices(
    d: &BasedRootDatum,
) -> Result<(Vec<LatticeVector>, Vec<LatticeVector>), RootDatumError> {
    if d.family != Family::GSpinEven {
        return Err(RootDatumError::WrongFamily(d.family));
    }
    if d.galois_label.is_none() {
        return Err(RootDatumError::SplitForm);
    }
    let n = d.n;
    let mut chars: Vec<LatticeVector> = (1..n).map(|i| unit(n, i)).collect();
    chars.push(comb(n, &[(2, 0), (1, n)]));
    let cochars = (0..n).map(|i| unit(n, i)).collect();
    Ok((chars, cochars))
}

/// Exponent of `det g` in the modulus character of the Siegel parabolic of
/// `G_{2m+1}` ([`Family::GSpinOdd`]) or `G_{2m}` ([`Family::GSpinEven`]).
pub fn modulus_exponent(family: Family, m: usize) -> Result<Q, RootDatumError> {
    match family {
        Family::GSpinOdd => Ok(q(m as i64)),
        Family::GSpinEven if m >= 1 => Ok(q(m as i64 - 1)),
        _ => Err(RootDatumError::Unsupported(family, m)),
    }
}

/// Parity of the ambient group `G_{4n+1}` (even case) or `G_{4n}` (odd case).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// For the parabolic with Levi `GL_{2n_1} × … × GL_{2n_r} × G_1` of
/// `G_{4n+1}` (even case) or `G_{4n}` (odd case), the exponent of
/// `|det g_i|` in `|δ_P|^{1/2}`, where `n = Σ n_i`.
pub fn block_half_modulus_exponents(parity: Parity, blocks: &[usize]) -> Vec<Q> {
    let n: usize = blocks.iter().sum();
    let base = match parity {
        Parity::Even => q(n as i64),
        Parity::Odd => q(n as i64) - Q::new(1.into(), 2.into()),
    };
    (0..blocks.len())
        .map(|i| {
            let after: usize = blocks[i + 1..].iter().sum();
            let before: usize = blocks[..i].iter().sum();
            base.clone() + q(after as i64) - q(before as i64)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gsp2_table() {
        let d = build_datum(Family::GSp, 2).unwrap();
        assert_eq!(d.simple_roots, vec![vec![0, 1, -1], vec![-1, 0, 2]]);
        assert_eq!(d.simple_coroots, vec![vec![0, 1, -1], vec![0, 0, 1]]);
        assert_eq!(cartan_matrix(&d), vec![vec![2, -2], vec![-1, 2]]);
    }

    #[test]
    fn gso2_table() {
        let d = build_datum(Family::GSO, 2).unwrap();
        assert_eq!(d.simple_roots, vec![vec![0, 1, -1], vec![-1, 1, 1]]);
        assert_eq!(d.simple_coroots, vec![vec![0, 1, -1], vec![0, 1, 1]]);
    }

    #[test]
    fn d4_cartan() {
        let d = build_datum(Family::GSO, 4).unwrap();
        let want = vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ];
        assert_eq!(cartan_matrix(&d), want);
    }

    #[test]
    fn nu_examples() {
        let d = build_datum(Family::GSpinEven, 3).unwrap();
        assert_eq!(outer_nu(&d, &[0, 0, 0, 1], Side::Char).unwrap(), vec![0, 0, 0, -1]);
        assert_eq!(outer_nu(&d, &[1, 0, 0, 0], Side::Char).unwrap(), vec![1, 0, 0, 1]);
        assert_eq!(outer_nu(&d, &[0, 0, 0, 1], Side::Cochar).unwrap(), vec![1, 0, 0, -1]);
        let gsp = build_datum(Family::GSp, 3).unwrap();
        assert!(outer_nu(&gsp, &[0, 0, 0, 1], Side::Char).is_err());
    }

    #[test]
    fn sublattices_n3() {
        let d = build_quasi_split(3, crate::arith::square_class_of(&q(2)).unwrap()).unwrap();
        let (c, cc) = rational_sublattices(&d).unwrap();
        assert_eq!(c, vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![2, 0, 0, 1]]);
        assert_eq!(cc, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
        let split = build_datum(Family::GSpinEven, 3).unwrap();
        assert_eq!(rational_sublattices(&split), Err(RootDatumError::SplitForm));
    }

    #[test]
    fn modulus_examples() {
        assert_eq!(modulus_exponent(Family::GSpinOdd, 4).unwrap(), q(4));
        assert_eq!(modulus_exponent(Family::GSpinEven, 4).unwrap(), q(3));
        assert_eq!(block_half_modulus_exponents(Parity::Even, &[1, 1]), vec![q(3), q(1)]);
    }

    /// Independent route: sum the torus weights of the unipotent radical.
    fn modulus_oracle(parity: Parity, blocks: &[usize]) -> Vec<Q> {
        let n: usize = blocks.iter().sum();
        let size = 2 * n;
        let block_of: Vec<usize> = blocks
            .iter()
            .enumerate()
            .flat_map(|(b, &k)| std::iter::repeat_n(b, 2 * k))
            .collect();
        let mut exp = vec![0i64; blocks.len()];
        for a in 0..size {
            for b in a + 1..size {
                if block_of[a] != block_of[b] {
                    exp[block_of[a]] += 1;
                    exp[block_of[b]] -= 1;
                }
                exp[block_of[a]] += 1;
                exp[block_of[b]] += 1;
            }
            if parity == Parity::Even {
                exp[block_of[a]] += 1;
            }
        }
        exp.iter()
            .zip(blocks)
            .map(|(&e, &k)| Q::new(e.into(), (4 * k as i64).into()))
            .collect()
    }

    #[test]
    fn block_exponents_match_root_count() {
        let shapes: &[&[usize]] = &[&[1], &[2], &[1, 1], &[2, 1], &[1, 2], &[1, 1, 1], &[3, 1, 2]];
        for parity in [Parity::Even, Parity::Odd] {
            for s in shapes {
                assert_eq!(block_half_modulus_exponents(parity, s), modulus_oracle(parity, s), "{parity:?} {s:?}");
            }
        }
    }
}
