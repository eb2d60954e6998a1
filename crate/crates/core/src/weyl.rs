//! Signed-permutation models of the Weyl groups of `SO_{2n+1}` (type B) and
//! `SO_{2n}` (type D), their action on the lattices of `GSpin`, monomial
//! matrix realizations, and the elements `W(M)` attached to a Levi subgroup of
//! the Siegel parabolic.
//!
//! A signed permutation `(p, ε)` acts by `e_i ↦ ε_{p(i)}·e_{p(i)}`, i.e. the
//! sign vector is indexed by the target coordinate.

use crate::arith::{ArithError, Q};
use crate::root_datum::{build_datum, Family, LatticeVector, Side};
use crate::similitude::{monomial, SimilitudeMatrix};
use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("cannot combine type {0:?} with type {1:?}")]
    MixedTypes(WeylType, WeylType),
    #[error("rank mismatch: {0} vs {1}")]
    Rank(usize, usize),
    #[error("invalid signed permutation: {0}")]
    Invalid(String),
    #[error("block sizes must be even and positive, got {0:?}")]
    OddBlock(Vec<usize>),
    #[error("element is not in W(M) for blocks {0:?}")]
    NotInWM(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeylType {
    /// `W(SO_{2n+1})`, all sign vectors.
    B,
    /// `W(SO_{2n})`, sign vectors with an even number of `−1`.
    D,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    ty: WeylType,
    /// 1-based images `p(1), …, p(n)`.
    p: Vec<usize>,
    /// `eps[j-1] = ε_j`, indexed by target coordinate.
    eps: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(ty: WeylType, p: Vec<usize>, eps: Vec<i8>) -> Result<Self, WeylError> {
        let n = p.len();
        if eps.len() != n {
            return Err(WeylError::Rank(n, eps.len()));
        }
        let mut seen = vec![false; n];
        for &x in &p {
            if x == 0 || x > n || seen[x - 1] {
                return Err(WeylError::Invalid(format!("{p:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        if eps.iter().any(|&e| e != 1 && e != -1) {
            return Err(WeylError::Invalid(format!("signs {eps:?} not in {{±1}}")));
        }
        if ty == WeylType::D && eps.iter().filter(|&&e| e == -1).count() % 2 == 1 {
            return Err(WeylError::Invalid(format!("type D needs an even number of sign changes, got {eps:?}")));
        }
        Ok(SignedPermutation { ty, p, eps })
    }

    pub fn identity(ty: WeylType, n: usize) -> Self {
        SignedPermutation {
            ty,
            p: (1..=n).collect(),
            eps: vec![1; n],
        }
    }

    pub fn ty(&self) -> WeylType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.p.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.p
    }

    pub fn signs(&self) -> &[i8] {
        &self.eps
    }

    /// Sign attached to the source coordinate `i` (1-based): `ε_{p(i)}`.
    pub fn sign_at(&self, i: usize) -> i8 {
        self.eps[self.p[i - 1] - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.p.iter().enumerate().all(|(i, &x)| x == i + 1) && self.eps.iter().all(|&e| e == 1)
    }

    /// `self ∘ o`: first `o`, then `self`.
    pub fn compose(&self, o: &SignedPermutation) -> Result<SignedPermutation, WeylError> {
        if self.ty != o.ty {
            return Err(WeylError::MixedTypes(self.ty, o.ty));
        }
        if self.rank() != o.rank() {
            return Err(WeylError::Rank(self.rank(), o.rank()));
        }
        let p: Vec<usize> = o.p.iter().map(|&x| self.p[x - 1]).collect();
        let mut eps = vec![1i8; self.rank()];
        for i in 0..self.rank() {
            eps[p[i] - 1] = self.eps[p[i] - 1] * o.eps[o.p[i] - 1];
        }
        Ok(SignedPermutation { ty: self.ty, p, eps })
    }

    pub fn invert(&self) -> SignedPermutation {
        let n = self.rank();
        let mut p = vec![0; n];
        for (i, &x) in self.p.iter().enumerate() {
            p[x - 1] = i + 1;
        }
        // e_{p(i)} ↦ ε_{p(i)} e_i, so the new sign at target i is ε_{p(i)}.
        let eps = (0..n).map(|i| self.eps[self.p[i] - 1]).collect();
        SignedPermutation { ty: self.ty, p, eps }
    }

    /// Ambient size of the orthogonal group: `2n+1` (B) or `2n` (D).
    pub fn ambient(&self) -> usize {
        match self.ty {
            WeylType::B => 2 * self.rank() + 1,
            WeylType::D => 2 * self.rank(),
        }
    }

    /// The centered permutation of `{1..m}` realizing `self`.
    pub fn centered(&self) -> Vec<usize> {
        let n = self.rank();
        let m = self.ambient();
        let mut w: Vec<usize> = (1..=m).collect();
        for i in 1..=n {
            let t = self.p[i - 1];
            let img = if self.eps[t - 1] == 1 { t } else { m + 1 - t };
            w[i - 1] = img;
            w[m - i] = m + 1 - img;
        }
        w
    }

    /// Recovers `(p, ε)` from a centered permutation of `{1..m}`.
    pub fn from_centered(ty: WeylType, w: &[usize]) -> Result<Self, WeylError> {
        let m = w.len();
        let n = m / 2;
        let expected = match ty {
            WeylType::B => 2 * n + 1,
            WeylType::D => 2 * n,
        };
        if m != expected {
            return Err(WeylError::Invalid(format!("size {m} does not fit type {ty:?}")));
        }
        let mut p = vec![0; n];
        let mut eps = vec![1i8; n];
        for i in 1..=n {
            let x = w[i - 1];
            if x == 0 || x > m || w[m - i] != m + 1 - x {
                return Err(WeylError::Invalid(format!("{w:?} is not centered")));
            }
            if x <= n {
                p[i - 1] = x;
            } else if 2 * x == m + 1 {
                return Err(WeylError::Invalid(format!("{w:?} moves the middle index")));
            } else {
                p[i - 1] = m + 1 - x;
                eps[m - x] = -1;
            }
        }
        SignedPermutation::new(ty, p, eps)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}(p={:?}, eps={:?})", self.ty, self.p, self.eps)
    }
}

/// Action on `e`-lattice (`Side::Char`) or `e*`-lattice (`Side::Cochar`)
/// vectors, indexed `0..=n`.
pub fn act_on_vector(w: &SignedPermutation, v: &[i64], side: Side) -> Result<LatticeVector, WeylError> {
    let n = w.rank();
    if v.len() != n + 1 {
        return Err(WeylError::Rank(n + 1, v.len()));
    }
    let mut out = vec![0i64; n + 1];
    out[0] = v[0];
    for i in 1..=n {
        let t = w.p[i - 1];
        let s = i64::from(w.eps[t - 1]);
        out[t] += s * v[i];
        if s == -1 && side == Side::Cochar {
            out[0] += v[i];
        }
    }
    if side == Side::Char {
        for j in 1..=n {
            if w.eps[j - 1] == -1 {
                out[j] += v[0];
            }
        }
    }
    Ok(out)
}

/// Monomial matrix in `SO_m`: the centered permutation matrix, multiplied by
/// its determinant in type B.
pub fn to_matrix(w: &SignedPermutation) -> SimilitudeMatrix<Q> {
    let c = w.centered();
    let m = c.len();
    let plain = monomial::<Q>(&c, &vec![1; m]).expect("centered permutations preserve J");
    let det = plain.matrix().det();
    if w.ty == WeylType::B && det != Q::one() {
        let signs = vec![-1; m];
        monomial::<Q>(&c, &signs).expect("sign change preserves J")
    } else {
        plain
    }
}

/// Checks [`act_on_vector`] against [`to_matrix`]: `P·e_k*(2)·P⁻¹` is the
/// torus element whose exponents of 2 in positions `1..n` are `pr(w·e_k*)`,
/// for every `k`, and `w` preserves the pairing of the two lattices.
pub fn agrees_with_matrix(w: &SignedPermutation) -> bool {
    let n = w.rank();
    let p = to_matrix(w);
    let pinv = p.inverse();
    let m = p.size();
    let two = Q::from_integer(2.into());
    let unit = |i: usize| {
        let mut v = vec![0i64; n + 1];
        v[i] = 1;
        v
    };
    for k in 1..=n {
        let mut diag = vec![Q::one(); m];
        diag[k - 1] = two.clone();
        diag[m - k] = two.recip();
        let Ok(t) = crate::similitude::diagonal(&diag) else { return false };
        let c = p.mul(&t).mul(&pinv);
        let Ok(img) = act_on_vector(w, &unit(k), Side::Cochar) else { return false };
        for i in 0..m {
            for j in 0..m {
                let want = if i != j {
                    Q::zero()
                } else {
                    let (idx, flip) = if i < n { (i + 1, 1) } else if m % 2 == 1 && i == n { (0, 0) } else { (m - i, -1) };
                    match if idx == 0 { 0 } else { flip * img[idx] } {
                        0 => Q::one(),
                        1 => two.clone(),
                        -1 => two.recip(),
                        _ => return false,
                    }
                };
                if c.matrix()[(i, j)] != want {
                    return false;
                }
            }
        }
    }
    (0..=n).all(|i| {
        (0..=n).all(|j| {
            let x = act_on_vector(w, &unit(i), Side::Char).expect("rank matches");
            let y = act_on_vector(w, &unit(j), Side::Cochar).expect("rank matches");
            crate::root_datum::pairing(&x, &y) == i64::from(i == j)
        })
    })
}

/// Elementary reflection `s_i`, `1 ≤ i ≤ n`.
pub fn elementary(ty: WeylType, n: usize, i: usize) -> Result<SignedPermutation, WeylError> {
    if i == 0 || i > n || (ty == WeylType::D && n < 2) {
        return Err(WeylError::Invalid(format!("no reflection s_{i} in rank {n}")));
    }
    let mut p: Vec<usize> = (1..=n).collect();
    let mut eps = vec![1i8; n];
    if i < n {
        p.swap(i - 1, i);
    } else {
        match ty {
            WeylType::B => eps[n - 1] = -1,
            WeylType::D => {
                p.swap(n - 2, n - 1);
                eps[n - 2] = -1;
                eps[n - 1] = -1;
            }
        }
    }
    SignedPermutation::new(ty, p, eps)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All permutations of `{1..n}` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (1..=n).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn sign_vectors(n: usize, even_only: bool) -> Vec<Vec<i8>> {
    (0..1u32 << n)
        .map(|mask| (0..n).map(|k| if mask >> (n - 1 - k) & 1 == 1 { 1 } else { -1 }).collect::<Vec<i8>>())
        .filter(|e| !even_only || e.iter().filter(|&&x| x == -1).count() % 2 == 0)
        .collect()
}

/// The whole group, ordered lexicographically on `(p, ε)` with `−1 < +1`.
pub fn enumerate_all(ty: WeylType, n: usize) -> Vec<SignedPermutation> {
    let signs = sign_vectors(n, ty == WeylType::D);
    let mut out = Vec::new();
    for p in permutations(n) {
        for e in &signs {
            out.push(SignedPermutation {
                ty,
                p: p.clone(),
                eps: e.clone(),
            });
        }
    }
    out
}

pub fn random_element<R: Rng + ?Sized>(ty: WeylType, n: usize, rng: &mut R) -> SignedPermutation {
    let mut p: Vec<usize> = (1..=n).collect();
    p.shuffle(rng);
    let mut eps: Vec<i8> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    if ty == WeylType::D && n > 0 && eps.iter().filter(|&&e| e == -1).count() % 2 == 1 {
        eps[n - 1] = -eps[n - 1];
    }
    SignedPermutation { ty, p, eps }
}

/// Conjugation matrix of the involution `†` on a group of even size `m`: the
/// permutation matrix exchanging the two middle coordinates.
pub fn dagger_matrix(m: usize) -> Result<SimilitudeMatrix<Q>, ArithError> {
    if m < 2 || m % 2 == 1 {
        return Err(ArithError::Index(format!("dagger needs even size, got {m}")));
    }
    let mut perm: Vec<usize> = (1..=m).collect();
    perm.swap(m / 2 - 1, m / 2);
    monomial::<Q>(&perm, &vec![1; m])
}

fn check_blocks(sizes: &[usize]) -> Result<(), WeylError> {
    if sizes.is_empty() || sizes.iter().any(|&s| s == 0 || s % 2 == 1) {
        return Err(WeylError::OddBlock(sizes.to_vec()));
    }
    Ok(())
}

fn block_starts(sizes: &[usize]) -> Vec<usize> {
    let mut starts = Vec::with_capacity(sizes.len());
    let mut acc = 1;
    for &s in sizes {
        starts.push(acc);
        acc += s;
    }
    starts
}

/// The element of `W(M)` attached to a block permutation `π ∈ S_r` (source
/// block `b` lands in position `π(b)`) and block signs `σ ∈ {±1}^r`.
pub fn w_m_element(ty: WeylType, sizes: &[usize], pi: &[usize], sigma: &[i8]) -> Result<SignedPermutation, WeylError> {
    check_blocks(sizes)?;
    let r = sizes.len();
    if pi.len() != r || sigma.len() != r {
        return Err(WeylError::Rank(r, pi.len().min(sigma.len())));
    }
    let n: usize = sizes.iter().sum();
    let src = block_starts(sizes);
    let mut inv = vec![0; r];
    for (b, &k) in pi.iter().enumerate() {
        inv[k - 1] = b;
    }
    let ordered: Vec<usize> = inv.iter().map(|&b| sizes[b]).collect();
    let tgt = block_starts(&ordered);
    let mut p = vec![0; n];
    let mut eps = vec![1i8; n];
    for b in 0..r {
        let start = tgt[pi[b] - 1];
        for k in 0..sizes[b] {
            let i = src[b] + k;
            let img = if sigma[b] == 1 { start + k } else { start + sizes[b] - 1 - k };
            p[i - 1] = img;
            eps[img - 1] = sigma[b];
        }
    }
    SignedPermutation::new(ty, p, eps)
}

/// `W(M)` for the Levi `GL_{m_1} × … × GL_{m_r}` of the Siegel parabolic, in
/// lexicographic order on `(p, ε)`.
pub fn enumerate_w_m(sizes: &[usize], ty: WeylType) -> Result<Vec<SignedPermutation>, WeylError> {
    check_blocks(sizes)?;
    let r = sizes.len();
    let mut out = Vec::new();
    for pi in permutations(r) {
        for sigma in sign_vectors(r, false) {
            out.push(w_m_element(ty, sizes, &pi, &sigma)?);
        }
    }
    out.sort();
    Ok(out)
}

/// Block permutation and block signs of `w ∈ W(M)`, or `None` if `w` violates
/// block coherence.
pub fn block_data(w: &SignedPermutation, sizes: &[usize]) -> Option<(Vec<usize>, Vec<i8>)> {
    if sizes.iter().sum::<usize>() != w.rank() || sizes.contains(&0) {
        return None;
    }
    let src = block_starts(sizes);
    let mut lows = Vec::with_capacity(sizes.len());
    let mut sigma = Vec::with_capacity(sizes.len());
    for (b, &s) in sizes.iter().enumerate() {
        let first = src[b];
        let sg = w.sign_at(first);
        for i in first..first + s - 1 {
            if w.sign_at(i + 1) != sg || w.p[i] as i64 != w.p[i - 1] as i64 + i64::from(sg) {
                return None;
            }
        }
        lows.push(w.p[first - 1].min(w.p[first + s - 2]));
        sigma.push(sg);
    }
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by_key(|&b| lows[b]);
    let mut pi = vec![0; sizes.len()];
    for (k, &b) in order.iter().enumerate() {
        pi[b] = k + 1;
    }
    Some((pi, sigma))
}

/// Whether `w` sends every simple root of the block Levi to a simple root of
/// `GSpin_{2n+1}` (type B) or `GSpin_{2n}` (type D).
pub fn maps_levi_to_standard(w: &SignedPermutation, sizes: &[usize]) -> bool {
    let n = w.rank();
    let family = match w.ty {
        WeylType::B => Family::GSpinOdd,
        WeylType::D => Family::GSpinEven,
    };
    let simple = match build_datum(family, n) {
        Ok(d) => d.simple_roots,
        Err(_) => return false,
    };
    let starts = block_starts(sizes);
    sizes.iter().zip(&starts).all(|(&s, &st)| {
        (st..st + s - 1).all(|i| {
            let mut a = vec![0i64; n + 1];
            a[i] = 1;
            a[i + 1] = -1;
            let img = act_on_vector(w, &a, Side::Char).expect("rank matches");
            simple.contains(&img)
        })
    })
}

/// A formal representation label `τ` or `τ̃`, twisted by a product of named
/// characters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeviLabel {
    pub rep: String,
    pub contragredient: bool,
    pub twist: BTreeMap<String, i64>,
}

impl LeviLabel {
    pub fn new(rep: &str) -> Self {
        LeviLabel {
            rep: rep.to_string(),
            contragredient: false,
            twist: BTreeMap::new(),
        }
    }

    /// `λ ↦ λ̃ ⊗ ω`.
    pub fn dual_twist(&self, omega: &str) -> Self {
        let mut twist: BTreeMap<String, i64> = self.twist.iter().map(|(k, v)| (k.clone(), -v)).collect();
        *twist.entry(omega.to_string()).or_default() += 1;
        twist.retain(|_, v| !v.is_zero());
        LeviLabel {
            rep: self.rep.clone(),
            contragredient: !self.contragredient,
            twist,
        }
    }
}

impl fmt::Display for LeviLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.rep, if self.contragredient { "~" } else { "" })?;
        for (k, v) in &self.twist {
            if *v == 1 {
                write!(f, "⊗{k}")?;
            } else {
                write!(f, "⊗{k}^{v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviBlocks {
    pub sizes: Vec<usize>,
    pub labels: Vec<LeviLabel>,
}

/// Labels of `w·(τ_1 ⊗ … ⊗ τ_r)`: block `i` carries `τ_{π⁻¹(i)}`, replaced by
/// its dual twist when that block is sign-flipped.
pub fn act_on_levi_data(w: &SignedPermutation, blocks: &LeviBlocks, omega: &str) -> Result<LeviBlocks, WeylError> {
    if blocks.sizes.len() != blocks.labels.len() {
        return Err(WeylError::Rank(blocks.sizes.len(), blocks.labels.len()));
    }
    let (pi, sigma) = block_data(w, &blocks.sizes).ok_or_else(|| WeylError::NotInWM(blocks.sizes.clone()))?;
    let r = pi.len();
    let mut sizes = vec![0; r];
    let mut labels = vec![LeviLabel::new(""); r];
    for b in 0..r {
        let k = pi[b] - 1;
        sizes[k] = blocks.sizes[b];
        labels[k] = if sigma[b] == 1 {
            blocks.labels[b].clone()
        } else {
            blocks.labels[b].dual_twist(omega)
        };
    }
    Ok(LeviBlocks { sizes, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(n: usize, i: usize) -> Vec<i64> {
        let mut v = vec![0; n + 1];
        v[i] = 1;
        v
    }

    #[test]
    fn printed_examples() {
        let s3 = elementary(WeylType::D, 3, 3).unwrap();
        assert_eq!(act_on_vector(&s3, &e(3, 2), Side::Char).unwrap(), vec![0, 0, 0, -1]);
        let s2 = elementary(WeylType::B, 2, 2).unwrap();
        assert_eq!(act_on_vector(&s2, &e(2, 0), Side::Char).unwrap(), vec![1, 0, 1]);
        assert_eq!(act_on_vector(&s2, &e(2, 2), Side::Cochar).unwrap(), vec![1, 0, -1]);
    }

    #[test]
    fn group_orders_and_reflections() {
        for n in 1..=4 {
            assert_eq!(enumerate_all(WeylType::B, n).len(), (1..=n).product::<usize>() << n);
            if n >= 2 {
                assert_eq!(enumerate_all(WeylType::D, n).len(), (1..=n).product::<usize>() << (n - 1));
            }
            for ty in [WeylType::B, WeylType::D] {
                if ty == WeylType::D && n < 2 {
                    continue;
                }
                for i in 1..=n {
                    let s = elementary(ty, n, i).unwrap();
                    assert!(s.compose(&s).unwrap().is_identity());
                }
            }
        }
    }

    #[test]
    fn compose_matches_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 0..100 {
            let ty = if k % 2 == 0 { WeylType::B } else { WeylType::D };
            let n = 2 + k % 3;
            let a = random_element(ty, n, &mut rng);
            let b = random_element(ty, n, &mut rng);
            let ab = a.compose(&b).unwrap();
            assert_eq!(to_matrix(&ab).matrix(), &to_matrix(&a).matrix().mul(to_matrix(&b).matrix()));
            assert!(a.compose(&a.invert()).unwrap().is_identity());
            assert_eq!(to_matrix(&a).matrix().det(), q(1));
            assert_eq!(to_matrix(&a).lambda(), &q(1));
            assert_eq!(SignedPermutation::from_centered(ty, &a.centered()).unwrap(), a);
        }
        let b = SignedPermutation::identity(WeylType::B, 2);
        let d = SignedPermutation::identity(WeylType::D, 2);
        assert!(b.compose(&d).is_err());
    }

    #[test]
    fn action_matches_torus_conjugation() {
        for ty in [WeylType::B, WeylType::D] {
            for n in 2..=3 {
                for w in enumerate_all(ty, n) {
                    assert!(agrees_with_matrix(&w), "{w}");
                }
            }
        }
    }

    #[test]
    fn w_m_matches_root_filter() {
        for ty in [WeylType::B, WeylType::D] {
            for sizes in [vec![2], vec![4], vec![2, 2], vec![2, 4], vec![4, 2], vec![2, 2, 2]] {
                let n: usize = sizes.iter().sum();
                let wm = enumerate_w_m(&sizes, ty).unwrap();
                let r = sizes.len();
                assert_eq!(wm.len(), (1..=r).product::<usize>() << r);
                let filtered: Vec<_> = enumerate_all(ty, n)
                    .into_iter()
                    .filter(|w| maps_levi_to_standard(w, &sizes))
                    .collect();
                assert_eq!(wm, filtered, "{ty:?} {sizes:?}");
            }
        }
        assert!(enumerate_w_m(&[3, 1], WeylType::B).is_err());
    }

    #[test]
    fn levi_labels() {
        let blocks = LeviBlocks {
            sizes: vec![2, 4],
            labels: vec![LeviLabel::new("t1"), LeviLabel::new("t2")],
        };
        let id = SignedPermutation::identity(WeylType::D, 6);
        assert_eq!(act_on_levi_data(&id, &blocks, "w").unwrap(), blocks);
        let single = LeviBlocks {
            sizes: vec![4],
            labels: vec![LeviLabel::new("t")],
        };
        let flip = w_m_element(WeylType::D, &[4], &[1], &[-1]).unwrap();
        let out = act_on_levi_data(&flip, &single, "w").unwrap();
        assert_eq!(out.labels[0].to_string(), "t~⊗w");
        assert_eq!(act_on_levi_data(&flip, &out, "w").unwrap(), single);
        let swap = w_m_element(WeylType::D, &[2, 4], &[2, 1], &[1, -1]).unwrap();
        let out = act_on_levi_data(&swap, &blocks, "w").unwrap();
        assert_eq!(out.sizes, vec![4, 2]);
        assert_eq!(out.labels[0].to_string(), "t2~⊗w");
        assert_eq!(out.labels[1].to_string(), "t1");
        assert!(act_on_levi_data(&elementary(WeylType::D, 6, 1).unwrap(), &blocks, "w").is_err());
    }

    #[test]
    fn dagger_is_involutive_similitude() {
        let d = dagger_matrix(4).unwrap();
        assert!(d.mul(&d).matrix().is_identity());
        assert_eq!(d.matrix().det(), q(-1));
        assert!(dagger_matrix(5).is_err());
    }
}
