use crate::error::{Error, Result};

/// One identity of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckSpec {
    pub id: &'static str,
    pub formula: &'static str,
    pub group: Group,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    Karandikar,
    Singular,
    Strat,
    Shuffle,
    PreLie,
    RotaBaxter,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Karandikar => "karandikar",
            Group::Singular => "singular",
            Group::Strat => "strat",
            Group::Shuffle => "shuffle",
            Group::PreLie => "prelie",
            Group::RotaBaxter => "rb",
        }
    }

    pub const ALL: [Group; 6] = [Group::Karandikar, Group::Singular, Group::Strat, Group::Shuffle, Group::PreLie, Group::RotaBaxter];
}

const fn c(id: &'static str, formula: &'static str, group: Group) -> CheckSpec {
    CheckSpec { id, formula, group }
}

pub const CATALOG: &[CheckSpec] = &[
    c("K4", "(X≺Y)≺Z = X≺(YZ)", Group::Karandikar),
    c("K5", "X≻(Y≻Z) = (XY)≻Z", Group::Karandikar),
    c("K6", "(X≻Y)≺Z = X≻(Y≺Z)", Group::Karandikar),
    c("K7", "(XY)Z = X(YZ)", Group::Karandikar),
    c("K8", "[X≻Y,Z] = X≻[Y,Z]", Group::Karandikar),
    c("K9", "[X≺Y,Z] = [X,Y≻Z]", Group::Karandikar),
    c("K10", "[X,Y]≺Z = [X,Y≺Z]", Group::Karandikar),
    c("K11", "[[X,Y],Z] = [X,[Y,Z]]", Group::Karandikar),
    c("ASSOC-DERIVED", "(XY)Z = (XY)≺Z + (XY)≻Z + [XY,Z] = … = X(YZ), each step", Group::Karandikar),
    c("IBP", "XY = X≺Y + X≻Y + [X,Y]", Group::Karandikar),
    c("S19", "[[X,Y]^c,Z]^c = [X,[Y,Z]^c]^c = 0", Group::Singular),
    c("S20", "[[X,Y]^c,Z]^j = [X,[Y,Z]^c]^j = 0", Group::Singular),
    c("S21", "[[X,Y]^j,Z]^c = [X,[Y,Z]^j]^c = 0", Group::Singular),
    c("MIXED", "[X≺Y,Z]^c = [X,Y≻Z]^c, [X≺Y,Z]^j = [X,Y≻Z]^j", Group::Singular),
    c("IBP-STRAT", "XY = X≽Y + X≼Y + [X,Y]^j", Group::Singular),
    c("REGULAR", "[[X,Y],Z] = [X,[Y,Z]] = 0", Group::Strat),
    c("SH27", "(X≼Y)≼Z − X≼(YZ) = ¼[[X,Y],Z] − ½[X,[Y,Z]]", Group::Strat),
    c("SH28", "(X≽Y)≼Z = X≽(Y≼Z)", Group::Strat),
    c("SH29", "X≽(Y≽Z) − (XY)≽Z = ¼[X,[Y,Z]] − ½[[X,Y],Z]", Group::Strat),
    c("DSHUF-1", "(X≺Y)≺Z = X≺(Y≺Z + Y⋗Z)", Group::Shuffle),
    c("DSHUF-2", "(X⋗Y)≺Z = X⋗(Y≺Z)", Group::Shuffle),
    c("DSHUF-3", "X⋗(Y⋗Z) = (X≺Y + X⋗Y)⋗Z", Group::Shuffle),
    c("PRELIE-ITO", "X◮(Y◮Z) − (X◮Y)◮Z = Y◮(X◮Z) − (Y◮X)◮Z", Group::PreLie),
    c("PRELIE-STRAT", "X▷(Y▷Z) − (X▷Y)▷Z = Y▷(X▷Z) − (Y▷X)▷Z", Group::PreLie),
    c("COMM-ITO", "XY − YX = X◮Y − Y◮X", Group::PreLie),
    c("COMM-STRAT", "XY − YX = X▷Y − Y▷X", Group::PreLie),
    c("BRACE-SYM", "{Y₁,Y₂,Y₃}X = {Y_σ(1),Y_σ(2),Y_σ(3)}X", Group::PreLie),
    c("OG-ASSOC", "(A⋆B)⋆C = A⋆(B⋆C)", Group::PreLie),
    c("IOTA-MORPH", "ι(A⋆B) = ι(A)ι(B)", Group::PreLie),
    c("RB13", "R(x)R(y) = R(R(x)y + xR(y) + θxy)", Group::RotaBaxter),
    c("RB-ASSOC", "(x∗_θy)∗_θz = x∗_θ(y∗_θz), θ ∈ {0, 1, −1, 2}", Group::RotaBaxter),
];

/// Identities stated in the theory that have no executable check here.
pub const OUT_OF_SCOPE: &[(&str, &str)] = &[
    ("θ-quasi-shuffle axioms", "no axiom system is given for general weight; θ enters only through ∗_θ and rescaling"),
    ("ternary Stratonovich axioms with jumps", "no such system of relations in (≽, ≼, [,]^j) is available"),
    ("commutative quasi-shuffle X≺Y = Y≻X", "tested on scalar paths in the process test suite, not in the catalog"),
    ("Hoffman isomorphism", "not implemented"),
    ("continuous-time existence of exponentials", "outside the discrete model"),
];

pub fn find(id: &str) -> Result<&'static CheckSpec> {
    CATALOG.iter().find(|c| c.id.eq_ignore_ascii_case(id)).ok_or_else(|| Error::UnknownCheckId(id.to_string()))
}

/// Resolves `all`, group names and check ids (comma separated) to catalog rows,
/// in catalog order and without duplicates.
pub fn resolve(selector: &str) -> Result<Vec<&'static CheckSpec>> {
    let mut wanted = vec![false; CATALOG.len()];
    for part in selector.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if part.eq_ignore_ascii_case("all") {
            wanted.iter_mut().for_each(|w| *w = true);
        } else if let Some(g) = Group::ALL.iter().find(|g| g.name().eq_ignore_ascii_case(part)) {
            for (i, c) in CATALOG.iter().enumerate() {
                if c.group == *g {
                    wanted[i] = true;
                }
            }
        } else {
            let entry = find(part)?;
            let i = CATALOG.iter().position(|c| c.id == entry.id).expect("found above");
            wanted[i] = true;
        }
    }
    Ok(CATALOG.iter().zip(wanted).filter(|(_, w)| *w).map(|(c, _)| c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = CATALOG.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), CATALOG.len());
    }

    #[test]
    fn resolve_groups_and_ids() {
        let r = resolve("singular,K4").unwrap();
        assert_eq!(r[0].id, "K4");
        assert!(r.iter().any(|c| c.id == "S21"));
        assert_eq!(resolve("all").unwrap().len(), CATALOG.len());
        assert_eq!(resolve("K99"), Err(Error::UnknownCheckId("K99".into())));
    }
}
