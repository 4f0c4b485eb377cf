//! Named parameter sets for the standard figures.

use fracloci::LocusKind;

#[derive(Debug, Clone, PartialEq)]
pub struct Recipe {
    pub name: &'static str,
    pub kind: LocusKind,
    pub alphas: &'static [f64],
    pub ns: &'static [i32],
}

const FIG2_ALPHAS: &[f64] = &[2.0, 1.8, 1.5];

pub const RECIPES: &[Recipe] = &[
    Recipe { name: "fig1a", kind: LocusKind::Ss, alphas: &[2.0], ns: &[1, 2, 3, 4, 5] },
    Recipe { name: "fig1b", kind: LocusKind::Ss, alphas: &[1.000005], ns: &[1, 2, 3, 4, 5] },
    Recipe { name: "fig2a", kind: LocusKind::Ss, alphas: FIG2_ALPHAS, ns: &[2] },
    Recipe { name: "fig2b", kind: LocusKind::Ss, alphas: FIG2_ALPHAS, ns: &[3] },
    Recipe { name: "fig2c", kind: LocusKind::Cpa, alphas: FIG2_ALPHAS, ns: &[2] },
    Recipe { name: "fig2d", kind: LocusKind::Cpa, alphas: FIG2_ALPHAS, ns: &[3] },
];

pub fn lookup(name: &str) -> Option<&'static Recipe> {
    RECIPES.iter().find(|r| r.name == name)
}

pub fn names() -> Vec<&'static str> {
    RECIPES.iter().map(|r| r.name).collect()
}
