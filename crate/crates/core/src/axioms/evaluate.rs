//! Residuals of catalog identities on a single input triple.

use crate::algebra::{relative_residual, Module, PreLie, QuasiShuffle, SingularQuasiShuffle};
use crate::error::Result;
use crate::prelie::{associator, flavored, Flavor, FlavorShuffle};
use crate::strat::{shuffle_residual, shuffle_sides, strat_products, DerivedShuffle};

use crate::algebra::Dendriform;

/// Residual of check `id` on `(x, y, z)`, or `None` if `id` is not a generic check.
///
/// Equalities report `|lhs − rhs| / max(1, |lhs|, |rhs|)` on float backends and
/// the absolute residual on exact ones; vanishing statements report the norm.
pub fn eval_generic<B: SingularQuasiShuffle>(b: &B, id: &str, t: &[B::Elem; 3]) -> Result<Option<f64>> {
    let [x, y, z] = t;
    let rel = |l: &B::Elem, r: &B::Elem| relative_residual(b, l, r);
    let r = match id {
        "K4" => rel(&b.prec(&b.prec(x, y)?, z)?, &b.prec(x, &b.product(y, z)?)?)?,
        "K5" => rel(&b.succ(x, &b.succ(y, z)?)?, &b.succ(&b.product(x, y)?, z)?)?,
        "K6" => rel(&b.prec(&b.succ(x, y)?, z)?, &b.succ(x, &b.prec(y, z)?)?)?,
        "K7" => rel(&b.product(&b.product(x, y)?, z)?, &b.product(x, &b.product(y, z)?)?)?,
        "K8" => rel(&b.bracket(&b.succ(x, y)?, z)?, &b.succ(x, &b.bracket(y, z)?)?)?,
        "K9" => rel(&b.bracket(&b.prec(x, y)?, z)?, &b.bracket(x, &b.succ(y, z)?)?)?,
        "K10" => rel(&b.prec(&b.bracket(x, y)?, z)?, &b.bracket(x, &b.prec(y, z)?)?)?,
        "K11" => rel(&b.bracket(&b.bracket(x, y)?, z)?, &b.bracket(x, &b.bracket(y, z)?)?)?,
        "ASSOC-DERIVED" => assoc_chain(b, x, y, z)?,
        "IBP" => {
            let sum = b.add(&b.add(&b.prec(x, y)?, &b.succ(x, y)?)?, &b.bracket(x, y)?)?;
            rel(&b.product(x, y)?, &sum)?
        }
        "S19" => vanishing(b, |p, q| b.bracket_c(p, q), |p, q| b.bracket_c(p, q), t)?,
        "S20" => vanishing(b, |p, q| b.bracket_c(p, q), |p, q| b.bracket_j(p, q), t)?,
        "S21" => vanishing(b, |p, q| b.bracket_j(p, q), |p, q| b.bracket_c(p, q), t)?,
        "MIXED" => {
            let xy = b.prec(x, y)?;
            let yz = b.succ(y, z)?;
            rel(&b.bracket_c(&xy, z)?, &b.bracket_c(x, &yz)?)?.max(rel(&b.bracket_j(&xy, z)?, &b.bracket_j(x, &yz)?)?)
        }
        "IBP-STRAT" => {
            let (s, p) = strat_products(b, x, y)?;
            rel(&b.product(x, y)?, &b.add(&b.add(&s, &p)?, &b.bracket_j(x, y)?)?)?
        }
        "REGULAR" => b.magnitude(&b.bracket(&b.bracket(x, y)?, z)?).max(b.magnitude(&b.bracket(x, &b.bracket(y, z)?)?)),
        "SH27" | "SH28" | "SH29" => {
            let i = (id.as_bytes()[3] - b'7') as usize;
            let s = shuffle_residual(b, x, y, z)?;
            rel(&s.direct[i], &s.closed_form[i])?
        }
        "DSHUF-1" | "DSHUF-2" | "DSHUF-3" => {
            let i = (id.as_bytes()[6] - b'1') as usize;
            let sides = shuffle_sides(&DerivedShuffle(b), x, y, z)?;
            rel(&sides[i].0, &sides[i].1)?
        }
        "PRELIE-ITO" | "PRELIE-STRAT" => {
            let p = flavored(b, flavor_of(id));
            rel(&associator(&p, x, y, z)?, &associator(&p, y, x, z)?)?
        }
        "COMM-ITO" | "COMM-STRAT" => {
            let f = flavor_of(id);
            let d = FlavorShuffle::new(b, f);
            let p = flavored(b, f);
            let comm = b.sub(&d.product(x, y)?, &d.product(y, x)?)?;
            rel(&comm, &b.sub(&p.prelie(x, y)?, &p.prelie(y, x)?)?)?
        }
        _ => return Ok(None),
    };
    Ok(Some(r))
}

fn flavor_of(id: &str) -> Flavor {
    if id.ends_with("STRAT") {
        Flavor::Strat
    } else {
        Flavor::Ito
    }
}

fn vanishing<B, F, G>(b: &B, inner: F, outer: G, t: &[B::Elem; 3]) -> Result<f64>
where
    B: Module,
    F: Fn(&B::Elem, &B::Elem) -> Result<B::Elem>,
    G: Fn(&B::Elem, &B::Elem) -> Result<B::Elem>,
{
    let [x, y, z] = t;
    let left = outer(&inner(x, y)?, z)?;
    let right = outer(x, &inner(y, z)?)?;
    Ok(b.magnitude(&left).max(b.magnitude(&right)))
}

/// Each equality in the expansion `(XY)Z = … = X(YZ)` through the half-shuffle identities.
fn assoc_chain<B: QuasiShuffle>(b: &B, x: &B::Elem, y: &B::Elem, z: &B::Elem) -> Result<f64> {
    let sum = |items: &[B::Elem]| -> Result<B::Elem> {
        let mut acc = b.zero();
        for i in items {
            b.add_assign(&mut acc, i)?;
        }
        Ok(acc)
    };
    let xy = b.product(x, y)?;
    let yz = b.product(y, z)?;
    let start = b.product(&xy, z)?;
    let xpy = b.prec(x, y)?;
    let xsy = b.succ(x, y)?;
    let xby = b.bracket(x, y)?;
    let line1 = sum(&[b.prec(&xy, z)?, b.succ(&xy, z)?, b.bracket(&sum(&[xpy, xsy, xby])?, z)?])?;
    let common = [b.prec(x, &yz)?, b.succ(x, &b.prec(y, z)?)?, b.succ(x, &b.succ(y, z)?)?];
    let mut l2 = common.to_vec();
    l2.extend([
        b.bracket(x, &b.prec(y, z)?)?,
        b.bracket(x, &b.succ(y, z)?)?,
        b.succ(x, &b.bracket(y, z)?)?,
        b.bracket(x, &b.bracket(y, z)?)?,
    ]);
    let line2 = sum(&l2)?;
    let mut l3 = common.to_vec();
    l3.extend([b.succ(x, &b.bracket(y, z)?)?, b.bracket(x, &yz)?]);
    let line3 = sum(&l3)?;
    let end = b.product(x, &yz)?;
    let chain = [start, line1, line2, line3, end];
    let mut worst: f64 = 0.0;
    for w in chain.windows(2) {
        worst = worst.max(relative_residual(b, &w[0], &w[1])?);
    }
    Ok(worst)
}
