//! Inputs shared by the criterion benchmarks.

use skelgb_core::arrangements::{components, family_generators, skeleton_initial_generators};
use skelgb_core::{Family, FamilySpec, Ideal, Polynomial};

pub fn skeleton_generators(n: usize, p: usize) -> Vec<Polynomial> {
    family_generators(&FamilySpec::new(Family::Skeleton, n, p, 2).expect("p < n"))
}

pub fn skeleton_ideal(n: usize, p: usize) -> Ideal {
    Ideal::from_gens(skeleton_generators(n, p)).expect("nonempty")
}

pub fn squares_ideal(n: usize, p: usize) -> Ideal {
    Ideal::from_gens(skeleton_initial_generators(n, p)).expect("nonempty")
}

/// Component ideals of a family instance, in construction order.
pub fn component_ideals(family: Family, n: usize, p: usize, m: u32) -> Vec<Ideal> {
    let spec = FamilySpec::new(family, n, p, m).expect("valid spec");
    components(&spec).expect("rational components").iter().map(|c| c.ideal()).collect()
}
