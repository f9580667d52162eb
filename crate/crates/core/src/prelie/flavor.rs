use std::fmt;
use std::str::FromStr;

use crate::algebra::{Dendriform, DendriformPreLie, Module, PreLie, SingularQuasiShuffle};
use crate::error::{Error, Result};
use crate::linear::Rational;
use crate::strat::{strat_prec, strat_succ, succ_dot};

/// Stratonovich (`▷` from `(≼, ≽)`) or Itô (`◮` from `(≺, ⋗)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Strat,
    Ito,
}

impl Flavor {
    pub fn symbol(self) -> char {
        match self {
            Flavor::Strat => '▷',
            Flavor::Ito => '◮',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Strat => "strat",
            Flavor::Ito => "ito",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "strat" | "stratonovich" => Ok(Flavor::Strat),
            "ito" => Ok(Flavor::Ito),
            _ => Err(Error::Config(format!("unknown flavor `{s}`"))),
        }
    }
}

/// The dendriform structure a flavor selects on a backend.
#[derive(Debug, Clone, Copy)]
pub struct FlavorShuffle<B> {
    pub backend: B,
    pub flavor: Flavor,
}

impl<B> FlavorShuffle<B> {
    pub fn new(backend: B, flavor: Flavor) -> Self {
        FlavorShuffle { backend, flavor }
    }
}

impl<B: SingularQuasiShuffle> Module for FlavorShuffle<B> {
    type Elem = B::Elem;
    fn zero(&self) -> B::Elem {
        self.backend.zero()
    }
    fn add(&self, a: &B::Elem, b: &B::Elem) -> Result<B::Elem> {
        self.backend.add(a, b)
    }
    fn add_assign(&self, acc: &mut B::Elem, x: &B::Elem) -> Result<()> {
        self.backend.add_assign(acc, x)
    }
    fn sub(&self, a: &B::Elem, b: &B::Elem) -> Result<B::Elem> {
        self.backend.sub(a, b)
    }
    fn scale(&self, a: &B::Elem, c: &Rational) -> B::Elem {
        self.backend.scale(a, c)
    }
    fn residual(&self, a: &B::Elem, b: &B::Elem) -> Result<f64> {
        self.backend.residual(a, b)
    }
    fn magnitude(&self, a: &B::Elem) -> f64 {
        self.backend.magnitude(a)
    }
    fn is_exact(&self) -> bool {
        self.backend.is_exact()
    }
}

impl<B: SingularQuasiShuffle> Dendriform for FlavorShuffle<B> {
    fn prec(&self, a: &B::Elem, b: &B::Elem) -> Result<B::Elem> {
        match self.flavor {
            Flavor::Strat => strat_prec(&self.backend, a, b),
            Flavor::Ito => self.backend.prec(a, b),
        }
    }
    fn succ(&self, a: &B::Elem, b: &B::Elem) -> Result<B::Elem> {
        match self.flavor {
            Flavor::Strat => strat_succ(&self.backend, a, b),
            Flavor::Ito => succ_dot(&self.backend, a, b),
        }
    }
    fn product(&self, a: &B::Elem, b: &B::Elem) -> Result<B::Elem> {
        match self.flavor {
            Flavor::Strat => self.backend.add(&self.prec(a, b)?, &self.succ(a, b)?),
            Flavor::Ito => self.backend.product(a, b),
        }
    }
}

/// The flavor's pre-Lie product on a backend.
pub fn flavored<B: SingularQuasiShuffle>(backend: B, flavor: Flavor) -> DendriformPreLie<FlavorShuffle<B>> {
    DendriformPreLie(FlavorShuffle::new(backend, flavor))
}

/// `X ▷ Y = X≽Y − Y≼X` or `X ◮ Y = X⋗Y − Y≺X`.
pub fn prelie_product<B: SingularQuasiShuffle>(backend: &B, flavor: Flavor, x: &B::Elem, y: &B::Elem) -> Result<B::Elem> {
    flavored(backend, flavor).prelie(x, y)
}

/// `a∘(b∘c) − (a∘b)∘c`.
pub fn associator<P: PreLie>(p: &P, a: &P::Elem, b: &P::Elem, c: &P::Elem) -> Result<P::Elem> {
    p.sub(&p.prelie(a, &p.prelie(b, c)?)?, &p.prelie(&p.prelie(a, b)?, c)?)
}

/// Max-norm of the left pre-Lie defect `assoc(a,b,c) − assoc(b,a,c)`.
pub fn prelie_residual<P: PreLie>(p: &P, a: &P::Elem, b: &P::Elem, c: &P::Elem) -> Result<f64> {
    p.residual(&associator(p, a, b, c)?, &associator(p, b, a, c)?)
}

/// Max-norm of `(XY − YX) − (X∘Y − Y∘X)`.
pub fn commutator_residual<B: SingularQuasiShuffle>(backend: &B, flavor: Flavor, x: &B::Elem, y: &B::Elem) -> Result<f64> {
    let d = FlavorShuffle::new(backend, flavor);
    let comm = backend.sub(&d.product(x, y)?, &d.product(y, x)?)?;
    let p = flavored(backend, flavor);
    let pl = backend.sub(&p.prelie(x, y)?, &p.prelie(y, x)?)?;
    backend.residual(&comm, &pl)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::process::{integer_path, Grid, JumpPattern, PathAlgebra};
    use crate::words::{Word, WordAlgebra, WordSeries};

    fn w(v: &[u32]) -> WordSeries {
        WordSeries::basis(Word::from_values(v))
    }

    #[test]
    fn ito_prelie_on_single_letters() {
        let b = WordAlgebra::integer();
        let p = flavored(&b, Flavor::Ito);
        assert_eq!(prelie_residual(&p, &w(&[1]), &w(&[2]), &w(&[3])).unwrap(), 0.0);
    }

    #[test]
    fn self_commutator_vanishes() {
        let b = WordAlgebra::integer();
        let x = w(&[1, 2]);
        let p = flavored(&b, Flavor::Ito);
        let s = b.sub(&p.prelie(&x, &x).unwrap(), &p.prelie(&x, &x).unwrap()).unwrap();
        assert!(s.is_zero());
        assert_eq!(commutator_residual(&b, Flavor::Ito, &x, &x).unwrap(), 0.0);
    }

    #[test]
    fn ito_commutator_on_integer_paths() {
        let g = Arc::new(Grid::uniform(9, 1.0).unwrap());
        let b = PathAlgebra::new(g.clone(), 2);
        let x = integer_path(&g, 2, 0, 0, 3, JumpPattern::Mixed).unwrap();
        let y = integer_path(&g, 2, 0, 1, 3, JumpPattern::Mixed).unwrap();
        assert_eq!(commutator_residual(&b, Flavor::Ito, &x, &y).unwrap(), 0.0);
    }

    #[test]
    fn strat_on_shuffle_model() {
        let b = WordAlgebra::shuffle();
        let p = flavored(&b, Flavor::Strat);
        assert_eq!(prelie_residual(&p, &w(&[1]), &w(&[2, 1]), &w(&[3])).unwrap(), 0.0);
        assert_eq!(commutator_residual(&b, Flavor::Strat, &w(&[1]), &w(&[2, 1])).unwrap(), 0.0);
    }

    #[test]
    fn flavor_parse() {
        assert_eq!("STRAT".parse::<Flavor>().unwrap(), Flavor::Strat);
        assert!("x".parse::<Flavor>().is_err());
    }
}
