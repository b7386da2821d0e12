//! The pseudobasis `[w]_m` of small multipermutations.

use crate::error::{KhopfError, Result};
use crate::exactpoly::{int, BetaPoly, UniPoly};
use crate::shapes::Composition;

use super::combination::{Combination, Tensor};
use super::word::{collapse, PackedWord};

pub type WordCombination = Combination<PackedWord>;
pub type WordTensor = Combination<Tensor<PackedWord>>;

fn require_small(w: &PackedWord) -> Result<()> {
    if w.is_small_multiperm() {
        Ok(())
    } else {
        Err(KhopfError::InvalidIndex(format!("{w} has equal adjacent letters")))
    }
}

/// `[a]_m [b]_m`, keeping the terms `[w]_m` with `ℓ(w) <= cap`.
///
/// The result is exact in every term of length at most `cap`; longer terms
/// of the infinite sum are dropped.
pub fn mmr_product(a: &PackedWord, b: &PackedWord, cap: usize) -> Result<WordCombination> {
    require_small(a)?;
    require_small(b)?;
    if cap < a.len() + b.len() {
        return Err(KhopfError::Inadequate(format!(
            "length cap {cap} is below {} + {}",
            a.len(),
            b.len()
        )));
    }
    let m = a.max();
    let bs = b.shifted(m);
    let base = a.len() + b.len();
    let mut out = WordCombination::new();
    // Walk both factors: a letter either repeats the last one used from its
    // factor or advances to the next one.
    let mut buf = Vec::new();
    let mut emit = |w: &[u32]| {
        out.add_term(PackedWord::new_unchecked(w.to_vec()), &BetaPoly::monomial(int(1), w.len() - base));
    };
    fn go(
        a: &[u32],
        b: &[u32],
        pa: usize,
        pb: usize,
        cap: usize,
        buf: &mut Vec<u32>,
        emit: &mut dyn FnMut(&[u32]),
    ) {
        if pa == a.len() && pb == b.len() {
            emit(buf);
        }
        if buf.len() == cap {
            return;
        }
        let mut options: Vec<(u32, usize, usize)> = Vec::with_capacity(4);
        if pa > 0 {
            options.push((a[pa - 1], pa, pb));
        }
        if pa < a.len() {
            options.push((a[pa], pa + 1, pb));
        }
        if pb > 0 {
            options.push((b[pb - 1], pa, pb));
        }
        if pb < b.len() {
            options.push((b[pb], pa, pb + 1));
        }
        for (x, na, nb) in options {
            if buf.last() == Some(&x) {
                continue;
            }
            buf.push(x);
            go(a, b, na, nb, cap, buf, emit);
            buf.pop();
        }
    }
    go(a.letters(), &bs, 0, 0, cap, &mut buf, &mut emit);
    Ok(out)
}

/// Reference version of [`mmr_product`]: filter all of `S^m_{m+n}` up to the cap.
pub fn mmr_product_bruteforce(a: &PackedWord, b: &PackedWord, cap: usize) -> Result<WordCombination> {
    require_small(a)?;
    require_small(b)?;
    let (m, n) = (a.max(), b.max());
    let base = a.len() + b.len();
    let bs = b.shifted(m);
    let mut out = WordCombination::new();
    for w in super::word::small_multiperms(m + n, cap) {
        if collapse(&w.restrict(0, m)) == a.letters() && collapse(&w.restrict(m, m + n)) == bs {
            let k = w.len().checked_sub(base).ok_or_else(|| KhopfError::IdentityViolation(format!("{w} too short")))?;
            out.add_term(w, &BetaPoly::monomial(int(1), k));
        }
    }
    Ok(out)
}

/// `Δ[w]_m`: prefix/suffix splits plus `beta` times the overlapping splits.
pub fn mmr_coproduct(w: &PackedWord) -> Result<WordTensor> {
    require_small(w)?;
    let l = w.letters();
    let n = l.len();
    let mut out = WordTensor::new();
    for i in 0..=n {
        out.add_term(Tensor(PackedWord::standardized(&l[..i]), PackedWord::standardized(&l[i..])), &BetaPoly::one());
    }
    let beta = BetaPoly::monomial(int(1), 1);
    for i in 1..=n {
        out.add_term(Tensor(PackedWord::standardized(&l[..i]), PackedWord::standardized(&l[i - 1..])), &beta);
    }
    Ok(out)
}

/// Bilinear extension of [`mmr_product`].
pub fn mmr_mul(x: &WordCombination, y: &WordCombination, cap: usize) -> Result<WordCombination> {
    let mut out = WordCombination::new();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            if a.len() + b.len() > cap {
                continue;
            }
            out.add_assign(&mmr_product(a, b, cap)?.scale(&(ca * cb)));
        }
    }
    Ok(out)
}

/// Linear extension of [`mmr_coproduct`].
pub fn mmr_comul(x: &WordCombination) -> Result<WordTensor> {
    let mut out = WordTensor::new();
    for (w, c) in x.iter() {
        out.add_assign(&mmr_coproduct(w)?.scale(c));
    }
    Ok(out)
}

/// The zeta functions on words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Zeta {
    /// `ζ_<`: strictly increasing words.
    Lt,
    /// `ζ_>`: strictly decreasing words.
    Gt,
    /// `ζ_{>|<}`, the convolution of the two.
    Peak,
}

fn strictly(w: &[u32], up: bool) -> bool {
    w.windows(2).all(|p| if up { p[0] < p[1] } else { p[0] > p[1] })
}

/// `w_1 > ... > w_i < ... < w_n` for some `i`.
fn is_valley(w: &[u32]) -> bool {
    match w.iter().enumerate().min_by_key(|(_, &x)| x) {
        Some((i, _)) => strictly(&w[..=i], false) && strictly(&w[i..], true),
        None => true,
    }
}

fn t_pow(c: i64, k: usize) -> UniPoly {
    UniPoly::monomial(BetaPoly::from_int(c), k as u32)
}

/// A zeta function evaluated on a single packed word of `mWQSym`.
pub fn zeta_word(w: &[u32], which: Zeta) -> UniPoly {
    let n = w.len();
    match which {
        Zeta::Lt => {
            if strictly(w, true) {
                t_pow(1, n)
            } else {
                UniPoly::zero()
            }
        }
        Zeta::Gt => {
            if strictly(w, false) {
                t_pow(1, n)
            } else {
                UniPoly::zero()
            }
        }
        Zeta::Peak => {
            if n == 0 {
                return t_pow(1, 0);
            }
            if is_valley(w) {
                return t_pow(2, n);
            }
            // w_1 > ... > w_i = w_{i+1} < ... < w_n
            let doubled = (1..n).any(|i| w[i - 1] == w[i] && strictly(&w[..i], false) && strictly(&w[i..], true));
            if doubled {
                t_pow(1, n)
            } else {
                UniPoly::zero()
            }
        }
    }
}

/// A zeta function evaluated on the pseudobasis element `[w]_m`.
pub fn zeta_pseudo(w: &PackedWord, which: Zeta) -> Result<UniPoly> {
    require_small(w)?;
    let n = w.len();
    Ok(match which {
        Zeta::Lt | Zeta::Gt => zeta_word(w.letters(), which),
        Zeta::Peak => {
            if n == 0 {
                t_pow(1, 0)
            } else if is_valley(w.letters()) {
                let mut p = t_pow(2, n);
                p.add_term(n as u32 + 1, &BetaPoly::monomial(int(1), 1));
                p
            } else {
                UniPoly::zero()
            }
        }
    })
}

pub fn zeta_combination(h: &WordCombination, which: Zeta) -> Result<UniPoly> {
    let mut r = UniPoly::zero();
    for (w, c) in h.iter() {
        r = r.add(&zeta_pseudo(w, which)?.scale(c));
    }
    Ok(r)
}

/// `ζ_alpha(h)`: the coefficient of `t^{α_1} ⊗ ... ⊗ t^{α_k}` in
/// `ζ^{⊗k} Δ^{(k-1)} h`. The empty composition gives the counit.
pub fn zeta_alpha(h: &WordCombination, alpha: &Composition, which: Zeta) -> Result<BetaPoly> {
    let parts = alpha.parts();
    if parts.is_empty() {
        return Ok(h.coeff(&PackedWord::empty()));
    }
    let mut total = BetaPoly::zero();
    if parts.len() == 1 {
        return Ok(zeta_combination(h, which)?.coeff(parts[0]));
    }
    let rest = Composition::from_slice(&parts[1..]);
    for (w, c) in h.iter() {
        for (Tensor(left, right), d) in mmr_coproduct(w)?.iter() {
            let z = zeta_pseudo(left, which)?.coeff(parts[0]);
            if z.is_zero() {
                continue;
            }
            let tail = zeta_alpha(&WordCombination::single(right.clone(), BetaPoly::one()), &rest, which)?;
            total += &(&(&z * &tail) * &(c * d));
        }
    }
    Ok(total)
}
