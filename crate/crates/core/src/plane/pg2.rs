//! `PG(2, q)` from the cubic extension: points are the cosets `gF` of
//! `K*/F*`, lines are the cosets `hE` with `E = ker Tr`, and `gF` lies on
//! `hE` iff `Tr(g/h) = 0`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{Plane, Provenance};
use crate::gf::{FieldElement, FieldTower, TowerExt};

/// Coordinates of `PG(2, q)`: the canonical representative of each coset.
///
/// A representative is scaled so its highest nonzero coordinate is `1`.
/// Points and lines are both indexed by representatives in increasing
/// [`FieldElement::index`] order, so point `i` is `g_i F` and line `i` is
/// `g_i E`.
#[derive(Debug, Clone)]
pub struct Pg2 {
    tower: Arc<FieldTower>,
    reps: Vec<FieldElement>,
    lookup: HashMap<u32, usize>,
}

impl Pg2 {
    pub fn new(tower: &Arc<FieldTower>) -> Self {
        let mut reps: Vec<FieldElement> = tower
            .elements()
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| canonical(&g))
            .collect();
        reps.sort_by_key(FieldElement::index);
        reps.dedup();
        let lookup = reps
            .iter()
            .enumerate()
            .map(|(i, g)| (g.index(), i))
            .collect();
        Pg2 {
            tower: Arc::clone(tower),
            reps,
            lookup,
        }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn representatives(&self) -> &[FieldElement] {
        &self.reps
    }

    /// Index of the coset `gF` (equivalently `gE`) of a nonzero element.
    pub fn index_of(&self, g: &FieldElement) -> Option<usize> {
        if g.is_zero() {
            return None;
        }
        self.lookup.get(&canonical(g).index()).copied()
    }

    pub fn plane(&self) -> Plane {
        let lines = self
            .reps
            .iter()
            .map(|h| {
                let h_inv = h.inv().expect("representatives are nonzero");
                self.reps
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| (*g * &h_inv).trace().is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let q = self.tower.q();
        Plane::from_lines(
            format!("pg2_{q}"),
            self.reps.len(),
            lines,
            Provenance::Algebraic { q },
        )
        .expect("algebraic incidence is well formed")
    }
}

/// Scales `g` so that its highest nonzero coordinate is `1`.
pub fn canonical(g: &FieldElement) -> FieldElement {
    let t = g.tower();
    match g.coeffs().iter().rposition(|&c| c != 0) {
        None => g.clone(),
        Some(h) => g.scale(t.fq_inv(g.coeffs()[h]).expect("nonzero coordinate")),
    }
}

/// `PG(2, q)` for the given tower.
pub fn build_pg2(tower: &Arc<FieldTower>) -> Plane {
    Pg2::new(tower).plane()
}
