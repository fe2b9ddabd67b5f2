use alloc::vec::Vec;

use super::Jet;
use crate::{C64, Error, Result, c64};

/// Anchors closer than this are split with divided-difference series
/// instead of jet division, which would amplify coefficient `k` by
/// `|β-α|^{-k}`.
pub const NEAR_SPLIT: f64 = 0.25;

/// `f(t) = a₀ + b₀(t-α) + (t-α)(β-t) g(t)` with `g` as jets at `α` and `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPointSplit {
    pub a0: C64,
    pub b0: C64,
    pub remainder: (Jet, Jet),
}

/// Complete homogeneous symmetric polynomials `h_m(x, y)`, `m = 0..=n`.
fn homogeneous(x: C64, y: C64, n: usize) -> Vec<C64> {
    let mut h = Vec::with_capacity(n + 1);
    let mut ym = c64(1.0, 0.0);
    h.push(ym);
    for m in 1..=n {
        ym *= y;
        let prev = h[m - 1];
        h.push(x * prev + ym);
    }
    h
}

/// Jet of the second divided difference `t ↦ f[t, p, q]` at the jet's anchor,
/// plus `f[p, q]`. The order falls by two.
fn second_divided_difference(f: &Jet, p: C64, q: C64) -> (C64, Jet) {
    let k = f.order();
    let c = f.coeffs();
    let h = homogeneous(p - f.anchor(), q - f.anchor(), k);
    let first: C64 = (1..=k).map(|j| c[j] * h[j - 1]).sum();
    let coeffs = (0..=k - 2).map(|i| (i + 2..=k).map(|j| c[j] * h[j - 2 - i]).sum()).collect();
    (first, Jet::new(f.anchor(), coeffs))
}

/// Two-point split of `f` given as jets at `α` and `β`.
///
/// Well-separated anchors use jet division and return remainders of order
/// `K-1`. Anchors within [`NEAR_SPLIT`] use divided-difference series and
/// return order `K-2`; callers in that regime should supply extra order.
pub fn two_point_split(f_at_alpha: &Jet, f_at_beta: &Jet, alpha: C64, beta: C64) -> Result<TwoPointSplit> {
    if alpha == beta {
        return Err(Error::Domain("two_point_split needs distinct anchors".into()));
    }
    if f_at_alpha.anchor() != alpha || f_at_beta.anchor() != beta {
        return Err(Error::Domain("two_point_split: jets must be anchored at alpha and beta".into()));
    }
    let k = f_at_alpha.order().min(f_at_beta.order());
    if k < 2 {
        return Err(Error::OrderExhausted { op: "two_point_split", order: k, needed: 2 });
    }
    let fa = f_at_alpha.truncate(k);
    let fb = f_at_beta.truncate(k);
    let len = beta - alpha;
    let a0 = fa.value();
    if len.norm() <= NEAR_SPLIT {
        let (b0, ga) = second_divided_difference(&fa, alpha, beta);
        let (_, gb) = second_divided_difference(&fb, alpha, beta);
        return Ok(TwoPointSplit { a0, b0, remainder: (-&ga, -&gb) });
    }
    let b0 = (fb.value() - a0) / len;
    // at α: (f - a0 - b0(t-α)) / (t-α) / (β-t)
    let mut na: Vec<C64> = fa.coeffs()[1..].to_vec();
    na[0] -= b0;
    let na = Jet::new(alpha, na);
    let beta_minus_t = pad(&Jet::new(alpha, alloc::vec![len, c64(-1.0, 0.0)]), k - 1);
    let ga = na.div(&beta_minus_t)?;
    // at β: -(f - a0 - b0(t-α)) / (t-β) / (t-α)
    let mut nb: Vec<C64> = fb.coeffs()[1..].to_vec();
    nb[0] -= b0;
    let nb = Jet::new(beta, nb);
    let t_minus_alpha = pad(&Jet::new(beta, alloc::vec![len, c64(1.0, 0.0)]), k - 1);
    let gb = -&nb.div(&t_minus_alpha)?;
    Ok(TwoPointSplit { a0, b0, remainder: (ga, gb) })
}

fn pad(j: &Jet, order: usize) -> Jet {
    let mut c = j.coeffs().to_vec();
    c.resize(order + 1, c64(0.0, 0.0));
    c.truncate(order + 1);
    Jet::new(j.anchor(), c)
}
