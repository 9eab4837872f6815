//! Simplicial actions of finite groups and their quotient complexes.
//!
//! Quotients are taken only for regular actions (no simplex maps to itself
//! except pointwise); irregular actions are regularized by barycentric
//! subdivision first, which always succeeds after at most two rounds.

use crate::group::FiniteGroup;
use crate::simplicial::{permutation_parity, CellId, SimplicialComplex};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("invalid action: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    pub group: FiniteGroup,
    pub complex: SimplicialComplex,
    /// Vertex permutation per group element.
    pub vertex_perm: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(
        group: FiniteGroup,
        complex: SimplicialComplex,
        vertex_perm: Vec<Vec<usize>>,
    ) -> Result<Self, ActionError> {
        if vertex_perm.len() != group.order() {
            return Err(ActionError::Invalid("one permutation per group element required".into()));
        }
        let n = complex.vertex_count;
        for (g, p) in vertex_perm.iter().enumerate() {
            if p.len() != n {
                return Err(ActionError::Invalid(format!("permutation of element {g} has wrong length")));
            }
            let mut seen = vec![false; n];
            for &x in p {
                if x >= n || seen[x] {
                    return Err(ActionError::Invalid(format!("element {g} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        if vertex_perm[group.identity].iter().enumerate().any(|(i, &x)| i != x) {
            return Err(ActionError::Invalid("identity element must act trivially".into()));
        }
        // homomorphism: perm[g*h] = perm[g] o perm[h]
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul[g][h];
                for v in 0..n {
                    if vertex_perm[gh][v] != vertex_perm[g][vertex_perm[h][v]] {
                        return Err(ActionError::Invalid(format!(
                            "action is not a homomorphism at ({g},{h})"
                        )));
                    }
                }
            }
        }
        let action = GroupAction { group, complex, vertex_perm };
        // simplicial: each cell maps onto a cell
        for g in 0..action.group.order() {
            for c in 0..action.complex.cell_count() {
                if action.try_map_cell(g, c).is_none() {
                    return Err(ActionError::Invalid(format!(
                        "element {g} does not map cell {:?} to a cell",
                        action.complex.cell(c)
                    )));
                }
            }
        }
        Ok(action)
    }

    pub fn trivial(complex: SimplicialComplex) -> GroupAction {
        let n = complex.vertex_count;
        GroupAction::new(FiniteGroup::trivial(), complex, vec![(0..n).collect()]).unwrap()
    }

    fn try_map_cell(&self, g: usize, cell: CellId) -> Option<CellId> {
        let mut image: Vec<usize> =
            self.complex.cell(cell).iter().map(|&v| self.vertex_perm[g][v]).collect();
        image.sort_unstable();
        if image.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        self.complex.cell_id(&image)
    }

    pub fn map_cell(&self, g: usize, cell: CellId) -> CellId {
        self.try_map_cell(g, cell).expect("validated action maps cells to cells")
    }

    /// Sign of `g` on an ordered cell: the parity of the position permutation
    /// between the image vertices and their sorted order.
    pub fn cell_map_parity(&self, g: usize, cell: CellId) -> i8 {
        let image: Vec<usize> =
            self.complex.cell(cell).iter().map(|&v| self.vertex_perm[g][v]).collect();
        let mut sorted = image.clone();
        sorted.sort_unstable();
        let perm: Vec<usize> =
            image.iter().map(|v| sorted.binary_search(v).unwrap()).collect();
        permutation_parity(&perm)
    }

    /// Kernel of the action.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| self.vertex_perm[g].iter().enumerate().all(|(i, &x)| i == x))
            .collect()
    }

    pub fn is_effective(&self) -> bool {
        self.kernel().len() == 1
    }

    /// Every group element maps each oriented top cell to a coherently
    /// oriented image.
    pub fn is_orientation_preserving(&self) -> bool {
        for g in 0..self.group.order() {
            for t in self.complex.top_cells() {
                let image = self.map_cell(g, t);
                let o_src = self.complex.orientation[t].unwrap_or(1);
                let o_img = self.complex.orientation[image].unwrap_or(1);
                if o_img * self.cell_map_parity(g, t) != o_src {
                    return false;
                }
            }
        }
        true
    }

    /// Regularity: if `g` maps a cell to itself it fixes it pointwise, and no
    /// two distinct vertices of a cell lie in one orbit.
    pub fn is_regular(&self) -> bool {
        for g in 0..self.group.order() {
            if g == self.group.identity {
                continue;
            }
            for c in 0..self.complex.cell_count() {
                let cell = self.complex.cell(c);
                for &v in cell {
                    let w = self.vertex_perm[g][v];
                    if w != v && cell.binary_search(&w).is_ok() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Barycentric subdivision with the induced action on cell barycenters.
    pub fn subdivide(&self) -> GroupAction {
        let sub = self.complex.barycentric_subdivision();
        let perms: Vec<Vec<usize>> = (0..self.group.order())
            .map(|g| {
                (0..self.complex.cell_count()).map(|c| self.map_cell(g, c)).collect()
            })
            .collect();
        GroupAction::new(self.group.clone(), sub, perms).expect("induced action is valid")
    }

    /// Distinct cell orbits never share a vertex-orbit tuple; together with
    /// regularity this makes the quotient a simplicial complex whose cells are
    /// the cell orbits.
    pub fn orbits_separate_cells(&self) -> bool {
        let n_v = self.complex.vertex_count;
        let mut vertex_orbit = vec![usize::MAX; n_v];
        let mut next = 0;
        for v in 0..n_v {
            if vertex_orbit[v] != usize::MAX {
                continue;
            }
            for g in 0..self.group.order() {
                vertex_orbit[self.vertex_perm[g][v]] = next;
            }
            next += 1;
        }
        let mut tuple_to_cell: BTreeMap<Vec<usize>, CellId> = BTreeMap::new();
        for c in 0..self.complex.cell_count() {
            let mut q: Vec<usize> =
                self.complex.cell(c).iter().map(|&v| vertex_orbit[v]).collect();
            q.sort_unstable();
            if q.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
            if let Some(&c0) = tuple_to_cell.get(&q) {
                let same_orbit =
                    (0..self.group.order()).any(|g| self.map_cell(g, c0) == c);
                if !same_orbit {
                    return false;
                }
            } else {
                tuple_to_cell.insert(q, c);
            }
        }
        true
    }

    /// Subdivides until the action is regular and cell orbits are separated by
    /// vertex orbits. Two barycentric subdivisions always suffice.
    pub fn regularize(&self) -> GroupAction {
        let mut a = self.clone();
        for _ in 0..3 {
            if a.is_regular() && a.orbits_separate_cells() {
                return a;
            }
            a = a.subdivide();
        }
        panic!("action failed to become regular after three subdivisions");
    }

    /// Setwise stabilizer of a cell (pointwise for regular actions).
    pub fn cell_stabilizer(&self, cell: CellId) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.map_cell(g, cell) == cell).collect()
    }

    /// Stabilizer of a vertex.
    pub fn vertex_stabilizer(&self, v: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.vertex_perm[g][v] == v).collect()
    }
}

/// Global-quotient model of an orbifold: a regular action together with its
/// quotient complex and isotropy orders.
#[derive(Debug, Clone)]
pub struct OrbifoldComplex {
    pub action: GroupAction,
    pub quotient: SimplicialComplex,
    /// Quotient cell of each total-space cell.
    pub cell_to_orbit: Vec<CellId>,
    /// A representative total-space cell per quotient cell.
    pub orbit_rep: Vec<CellId>,
    /// Isotropy order per quotient cell.
    pub isotropy: Vec<usize>,
    pub effective: bool,
    pub kernel: Vec<usize>,
    /// Set when the complex is oriented and the action preserves orientation.
    pub orientable: bool,
}

/// Builds the quotient orbifold of a simplicial action. Irregular actions are
/// regularized by subdivision; ineffective ones are accepted and flagged.
pub fn build_quotient(action: &GroupAction) -> Result<OrbifoldComplex, ActionError> {
    let action = action.regularize();
    let complex = &action.complex;
    let nv = complex.vertex_count;
    // vertex orbits
    let mut vertex_orbit = vec![usize::MAX; nv];
    let mut next = 0;
    for v in 0..nv {
        if vertex_orbit[v] != usize::MAX {
            continue;
        }
        for g in 0..action.group.order() {
            vertex_orbit[action.vertex_perm[g][v]] = next;
        }
        next += 1;
    }
    // quotient cells: image vertex-orbit tuples; regularity keeps them simplices
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    for c in 0..complex.cell_count() {
        let mut q: Vec<usize> = complex.cell(c).iter().map(|&v| vertex_orbit[v]).collect();
        q.sort_unstable();
        if q.windows(2).any(|w| w[0] == w[1]) {
            return Err(ActionError::Invalid(
                "regularized action still collapses a cell; this is a bug".into(),
            ));
        }
        maximal.push(q);
    }
    let quotient = SimplicialComplex::from_maximal(next, &maximal)
        .map_err(|e| ActionError::Invalid(e.to_string()))?;
    let mut cell_to_orbit = vec![usize::MAX; complex.cell_count()];
    let mut orbit_rep = vec![usize::MAX; quotient.cell_count()];
    for c in 0..complex.cell_count() {
        let mut q: Vec<usize> = complex.cell(c).iter().map(|&v| vertex_orbit[v]).collect();
        q.sort_unstable();
        let qid = quotient.cell_id(&q).unwrap();
        cell_to_orbit[c] = qid;
        if orbit_rep[qid] == usize::MAX {
            orbit_rep[qid] = c;
        }
    }
    let isotropy: Vec<usize> =
        orbit_rep.iter().map(|&rep| action.cell_stabilizer(rep).len()).collect();
    let kernel = action.kernel();
    let effective = kernel.len() == 1;
    let orientable = action.is_orientation_preserving();
    // transport orientations to quotient top cells when the action preserves them
    let mut quotient = quotient;
    if orientable && complex.dim == quotient.dim {
        let mut signs: BTreeMap<Vec<usize>, i8> = BTreeMap::new();
        for qt in quotient.top_cells() {
            let rep = orbit_rep[qt];
            if complex.cell_dim(rep) != complex.dim {
                continue;
            }
            // the representative's vertex-orbit map is order-preserving up to
            // the parity of the sort
            let image: Vec<usize> =
                complex.cell(rep).iter().map(|&v| vertex_orbit[v]).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            let perm: Vec<usize> =
                image.iter().map(|v| sorted.binary_search(v).unwrap()).collect();
            let parity = permutation_parity(&perm);
            signs.insert(quotient.cell(qt).to_vec(), complex.orientation[rep].unwrap_or(1) * parity);
        }
        quotient = quotient
            .with_orientations(&signs)
            .map_err(|e| ActionError::Invalid(e.to_string()))?;
    }
    Ok(OrbifoldComplex {
        action,
        quotient,
        cell_to_orbit,
        orbit_rep,
        isotropy,
        effective,
        kernel,
        orientable,
    })
}

impl OrbifoldComplex {
    /// Isotropy order at the barycenter of a total-space cell.
    pub fn isotropy_of_cell(&self, cell: CellId) -> usize {
        self.isotropy[self.cell_to_orbit[cell]]
    }

    /// Isotropy order at the barycenter of a quotient cell.
    pub fn isotropy_of_orbit(&self, orbit: CellId) -> usize {
        self.isotropy[orbit]
    }

    pub fn quotient_euler_characteristic(&self) -> i64 {
        self.quotient.euler_characteristic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{bipyramid, torus};

    /// Z_k rotating the k-gon bipyramid.
    pub fn rotation_action(k: usize) -> GroupAction {
        let complex = bipyramid(k);
        let group = FiniteGroup::cyclic(k);
        let perms = (0..k)
            .map(|g| {
                let mut p = vec![0usize; 2 + k];
                p[0] = 0;
                p[1] = 1;
                for i in 0..k {
                    p[2 + i] = 2 + (i + g) % k;
                }
                p
            })
            .collect();
        GroupAction::new(group, complex, perms).unwrap()
    }

    #[test]
    fn trivial_quotient_is_identity() {
        let c = bipyramid(4);
        let orb = build_quotient(&GroupAction::trivial(c.clone())).unwrap();
        assert_eq!(orb.quotient.cell_count(), c.cell_count());
        assert!(orb.isotropy.iter().all(|&i| i == 1));
        assert!(orb.effective);
        assert!(orb.orientable);
    }

    #[test]
    fn rotation_quotient() {
        for k in [2usize, 3, 6] {
            let a = rotation_action(6);
            // restrict to the subgroup of order k inside Z_6
            let step = 6 / k;
            let sub = FiniteGroup::cyclic(k);
            let perms: Vec<Vec<usize>> =
                (0..k).map(|g| a.vertex_perm[g * step].clone()).collect();
            let act = GroupAction::new(sub, a.complex.clone(), perms).unwrap();
            assert!(act.is_orientation_preserving());
            let orb = build_quotient(&act).unwrap();
            // poles are fixed: isotropy k; generic points free
            let pole = orb.cell_to_orbit[orb.action.complex.cell_id(&[0]).unwrap()];
            assert_eq!(orb.isotropy[pole], k);
            let max_iso = orb.isotropy.iter().copied().max().unwrap();
            assert_eq!(max_iso, k);
            let free_cells =
                orb.isotropy.iter().filter(|&&i| i == 1).count();
            assert!(free_cells > 0);
        }
    }

    #[test]
    fn free_swap_of_two_triangles() {
        // two disjoint triangles swapped by Z_2
        let maximal = vec![vec![0, 1, 2], vec![3, 4, 5]];
        let complex = SimplicialComplex::from_maximal(6, &maximal).unwrap();
        let group = FiniteGroup::cyclic(2);
        let perms = vec![vec![0, 1, 2, 3, 4, 5], vec![3, 4, 5, 0, 1, 2]];
        let act = GroupAction::new(group, complex, perms).unwrap();
        assert!(act.is_regular());
        let orb = build_quotient(&act).unwrap();
        assert!(orb.isotropy.iter().all(|&i| i == 1));
        assert_eq!(orb.quotient.cell_count(), 7);
        assert_eq!(orb.quotient_euler_characteristic(), 1);
    }

    #[test]
    fn irregular_action_gets_subdivided() {
        // Z_2 flipping one edge: irregular, needs subdivision
        let complex = SimplicialComplex::from_maximal(2, &[vec![0, 1]]).unwrap();
        let act = GroupAction::new(
            FiniteGroup::cyclic(2),
            complex,
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        assert!(!act.is_regular());
        let orb = build_quotient(&act).unwrap();
        // quotient of an interval by the flip is half the interval
        assert_eq!(orb.quotient.dim, 1);
        assert_eq!(orb.quotient_euler_characteristic(), 1);
        // midpoint has isotropy 2
        assert!(orb.isotropy.contains(&2));
    }

    #[test]
    fn free_quotient_euler_divides() {
        // free torus translation: chi = 0 on both sides
        let t = torus(3, 3);
        let group = FiniteGroup::cyclic(3);
        let perms: Vec<Vec<usize>> = (0..3)
            .map(|g| (0..9).map(|v| ((v / 3 + g) % 3) * 3 + (v % 3)).collect())
            .collect();
        let act = GroupAction::new(group, t, perms).unwrap();
        let orb = build_quotient(&act).unwrap();
        assert!(orb.isotropy.iter().all(|&i| i == 1));
        assert_eq!(orb.quotient_euler_characteristic(), 0);
        assert_eq!(
            orb.action.complex.euler_characteristic(),
            3 * orb.quotient_euler_characteristic()
        );
    }

    #[test]
    fn ineffective_flagged() {
        // Z_2 acting trivially on a triangle
        let complex = SimplicialComplex::from_maximal(3, &[vec![0, 1, 2]]).unwrap();
        let act = GroupAction::new(
            FiniteGroup::cyclic(2),
            complex,
            vec![vec![0, 1, 2], vec![0, 1, 2]],
        )
        .unwrap();
        let orb = build_quotient(&act).unwrap();
        assert!(!orb.effective);
        assert_eq!(orb.kernel.len(), 2);
        assert!(orb.isotropy.iter().all(|&i| i == 2));
    }
}
