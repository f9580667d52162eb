//! The symmetric algebra over a pre-Lie algebra with its brace map and the
//! Oudom–Guin product `⋆`.

use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::algebra::{Dendriform, PreLie, Unital};
use crate::error::{Error, Result};
use crate::linear::{write_terms, LinComb, Rational};

use super::bernoulli::factorial;

/// Permutation sums are refused beyond this many factors.
pub const MAX_FACTORS: usize = 8;

/// A commutative monomial `K₁ ⊙ … ⊙ K_n`; the empty monomial is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial<K>(Vec<K>);

impl<K: Ord + Clone> Monomial<K> {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut factors: Vec<K>) -> Self {
        factors.sort();
        Monomial(factors)
    }

    pub fn factors(&self) -> &[K] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn times(&self, other: &Self) -> Self {
        Monomial::new(self.0.iter().chain(&other.0).cloned().collect())
    }
}

impl<K: Ord> Ord for Monomial<K> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl<K: Ord> PartialOrd for Monomial<K> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<K: fmt::Display> fmt::Display for Monomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊙ ")?;
            }
            write!(f, "({k})")?;
        }
        Ok(())
    }
}

/// Rational combination of monomials over basis keys `K`.
pub type Poly<K> = LinComb<Monomial<K>>;

/// Renders a polynomial with `⊙` between factors.
pub fn display_poly<K: Ord + Clone + fmt::Display>(p: &Poly<K>) -> String {
    struct D<'a, K: Ord>(&'a Poly<K>);
    impl<K: Ord + Clone + fmt::Display> fmt::Display for D<'_, K> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_terms(f, self.0.iter(), |m| m.to_string())
        }
    }
    D(p).to_string()
}

pub fn poly_unit<K: Ord + Clone>() -> Poly<K> {
    Poly::basis(Monomial::unit())
}

/// Degree-one polynomial from an element.
pub fn poly_linear<K: Ord + Clone>(x: &LinComb<K>) -> Poly<K> {
    x.iter().map(|(k, c)| (Monomial::new(vec![k.clone()]), c.clone())).collect()
}

/// `P ⊙ x` for an element `x`, extended multilinearly.
pub fn odot_element<K: Ord + Clone>(p: &Poly<K>, x: &LinComb<K>) -> Poly<K> {
    let mut out = Poly::zero();
    for (m, c) in p.iter() {
        for (k, d) in x.iter() {
            out.add_term(m.times(&Monomial(vec![k.clone()])), c * d);
        }
    }
    out
}

/// Commutative product `P ⊙ Q`.
pub fn odot<K: Ord + Clone>(p: &Poly<K>, q: &Poly<K>) -> Poly<K> {
    p.bilinear(q, |a, b| Ok(Poly::basis(a.times(b)))).expect("infallible")
}

/// `{Y₁,…,Y_n}X`, defined by `{Y}X = Y∘X` and
/// `{Y₁,…,Y_n}X = {Y_n}({Y₁,…,Y_{n−1}}X) − Σ_i {Y₁,…,{Y_n}Y_i,…,Y_{n−1}}X`.
pub fn brace<P: PreLie>(p: &P, slots: &[P::Elem], x: &P::Elem) -> Result<P::Elem> {
    let Some((last, rest)) = slots.split_last() else {
        return Ok(x.clone());
    };
    let mut out = p.prelie(last, &brace(p, rest, x)?)?;
    for i in 0..rest.len() {
        let mut moved = rest.to_vec();
        moved[i] = p.prelie(last, &rest[i])?;
        out = p.sub(&out, &brace(p, &moved, x)?)?;
    }
    Ok(out)
}

fn basis_elements<K: Ord + Clone>(keys: &[K]) -> Vec<LinComb<K>> {
    keys.iter().map(|k| LinComb::basis(k.clone())).collect()
}

/// `{P}X`, extended linearly in `P`; a constant `c` gives `c·X`.
pub fn brace_poly<K, P>(p: &P, poly: &Poly<K>, x: &LinComb<K>) -> Result<LinComb<K>>
where
    K: Ord + Clone,
    P: PreLie<Elem = LinComb<K>>,
{
    let mut out = LinComb::zero();
    for (m, c) in poly.iter() {
        out.add_scaled(&brace(p, &basis_elements(m.factors()), x)?, c);
    }
    Ok(out)
}

fn star_monomials<K, P>(p: &P, ys: &Monomial<K>, xs: &Monomial<K>) -> Result<Poly<K>>
where
    K: Ord + Clone,
    P: PreLie<Elem = LinComb<K>>,
{
    let m = ys.len();
    let n = xs.len();
    let yel = basis_elements(ys.factors());
    let xel = basis_elements(xs.factors());
    let mut out = Poly::zero();
    // every map f: {1..m} → {0..n}, encoded in base n+1
    let total = (n + 1).pow(m as u32);
    for code in 0..total {
        let mut groups: Vec<Vec<LinComb<K>>> = vec![Vec::new(); n + 1];
        let mut w0 = Vec::new();
        let mut c = code;
        for (j, y) in yel.iter().enumerate() {
            let target = c % (n + 1);
            c /= n + 1;
            if target == 0 {
                w0.push(ys.factors()[j].clone());
            } else {
                groups[target].push(y.clone());
            }
        }
        let mut term = Poly::basis(Monomial::new(w0));
        for i in 1..=n {
            let e = brace(p, &groups[i], &xel[i - 1])?;
            term = odot_element(&term, &e);
            if term.is_zero() {
                break;
            }
        }
        out.add_scaled(&term, &Rational::one());
    }
    Ok(out)
}

/// `P ⋆ Q`: `(Y₁⊙…⊙Y_m) ⋆ (X₁⊙…⊙X_n) = Σ_f W₀ ⊙ {W₁}X₁ ⊙ … ⊙ {W_n}X_n`.
pub fn star<K, P>(p: &P, a: &Poly<K>, b: &Poly<K>) -> Result<Poly<K>>
where
    K: Ord + Clone,
    P: PreLie<Elem = LinComb<K>>,
{
    a.bilinear(b, |ys, xs| star_monomials(p, ys, xs))
}

/// [`star`] with monomials of total degree above `max` discarded; `deg` grades the keys.
pub fn star_truncated<K, P, G>(p: &P, a: &Poly<K>, b: &Poly<K>, max: usize, deg: G) -> Result<Poly<K>>
where
    K: Ord + Clone,
    P: PreLie<Elem = LinComb<K>>,
    G: Fn(&K) -> usize + Copy,
{
    let mut out = Poly::zero();
    for (ys, ca) in a.iter() {
        for (xs, cb) in b.iter() {
            if monomial_degree(ys, deg) + monomial_degree(xs, deg) > max {
                continue;
            }
            out.add_scaled(&star_monomials(p, ys, xs)?, &(ca * cb));
        }
    }
    Ok(truncate(&out, max, deg))
}

pub fn monomial_degree<K, G: Fn(&K) -> usize>(m: &Monomial<K>, deg: G) -> usize
where
    K: Ord + Clone,
{
    m.factors().iter().map(deg).sum()
}

fn truncate<K: Ord + Clone, G: Fn(&K) -> usize + Copy>(p: &Poly<K>, max: usize, deg: G) -> Poly<K> {
    p.iter().filter(|(m, _)| monomial_degree(m, deg) <= max).map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// `𝒯⟨X₁,…,X_n⟩ = Σ_σ X_σ(1) ⋄ (X_σ(2) ⋄ (… ⋄ X_σ(n)))` with `⋄` the dendriform `≺`.
pub fn time_ordered<D: Dendriform>(d: &D, xs: &[D::Elem]) -> Result<D::Elem> {
    let n = xs.len();
    if n > MAX_FACTORS {
        return Err(Error::TooManyFactors(n, MAX_FACTORS));
    }
    if n == 0 {
        return Ok(d.zero());
    }
    let mut acc = d.zero();
    for perm in (0..n).permutations(n) {
        let mut nested = xs[perm[n - 1]].clone();
        for &i in perm[..n - 1].iter().rev() {
            nested = d.prec(&xs[i], &nested)?;
        }
        acc = d.add(&acc, &nested)?;
    }
    Ok(acc)
}

/// The algebra morphism `ι: (Poly, ⋆) → (A, ∗)` that is the identity on `A`.
pub fn iota<K, D>(d: &D, poly: &Poly<K>) -> Result<Unital<LinComb<K>>>
where
    K: Ord + Clone,
    D: Dendriform<Elem = LinComb<K>>,
{
    let mut scalar = Rational::zero();
    let mut elem = d.zero();
    for (m, c) in poly.iter() {
        if m.is_empty() {
            scalar += c;
        } else {
            elem = d.add(&elem, &d.scale(&time_ordered(d, &basis_elements(m.factors()))?, c))?;
        }
    }
    Ok(Unital { scalar, elem })
}

/// `exp^⊙(x) − 1` to degree `max` in `x`.
pub fn exp_odot<K: Ord + Clone>(x: &LinComb<K>, max: usize) -> Poly<K> {
    let mut out = Poly::zero();
    let mut power = poly_unit();
    for k in 1..=max {
        power = odot_element(&power, x);
        out.add_scaled(&power, &(Rational::one() / factorial(k)));
    }
    out
}

/// `log^⋆(1 + e) = Σ_k (−1)^{k+1} e^{⋆k}/k`, truncated at degree `max`.
pub fn log_star<K, P, G>(p: &P, e: &Poly<K>, max: usize, deg: G) -> Result<Poly<K>>
where
    K: Ord + Clone,
    P: PreLie<Elem = LinComb<K>>,
    G: Fn(&K) -> usize + Copy,
{
    if !e.coeff(&Monomial::unit()).is_zero() {
        return Err(Error::Config("log argument must have no constant term".into()));
    }
    let e = truncate(e, max, deg);
    let mut out = Poly::zero();
    let mut power = e.clone();
    for k in 1..=max {
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
        out.add_scaled(&power, &(sign / Rational::from_integer(k.into())));
        power = star_truncated(p, &power, &e, max, deg)?;
    }
    Ok(out)
}

/// `log^⋆(exp^⊙(x))` to degree `max`, which must be primitive (a single factor).
pub fn magnus_poly<K, P, G>(p: &P, x: &LinComb<K>, max: usize, deg: G) -> Result<LinComb<K>>
where
    K: Ord + Clone,
    P: PreLie<Elem = LinComb<K>>,
    G: Fn(&K) -> usize + Copy,
{
    if max == 0 {
        return Err(Error::Config("truncation order must be at least 1".into()));
    }
    let l = log_star(p, &exp_odot(x, max), max, deg)?;
    let mut out = LinComb::zero();
    for (m, c) in l.iter() {
        if m.len() != 1 {
            return Err(Error::NotPrimitive(m.len(), max));
        }
        out.add_term(m.factors()[0].clone(), c.clone());
    }
    Ok(out)
}
