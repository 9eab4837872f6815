//! Equivariant PL vector bundles over global-quotient charts.
//!
//! A bundle chart trivializes the bundle over every top cell of the complex;
//! transitions are constant invertible rational matrices across shared
//! codimension-one faces. Holonomy around interior codimension-two cells is
//! not required to vanish: that is where the Euler class lives, and sections
//! are pinned to the fixed subspace of the holonomy at such vertices. The
//! group acts by per-(element, top cell) fiber matrices.

mod perturb;
mod section;
mod transversal;

pub use perturb::{perturb_relative, PerturbSpec, PerturbationBasis};
pub use section::{enhance, multi_equivalent, multi_sum, val, Multisection, PLSection};
pub use transversal::{
    branch_zero_points, branch_zero_segments, is_transversal, vertex_zero_index,
    TransversalityReport, ZeroPoint, ZeroSegment,
};

use crate::action::{build_quotient, GroupAction, OrbifoldComplex};
use crate::rat::QMat;
use crate::simplicial::CellId;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BundleError {
    #[error("invalid bundle: {0}")]
    Invalid(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("genericity failure: {0}")]
    GenericityFailure(String),
}

/// One chart of an equivariant bundle.
#[derive(Debug, Clone)]
pub struct BundleChart {
    pub orbifold: OrbifoldComplex,
    pub rank: usize,
    /// `transitions[&(a, b)]` maps frame `a` to frame `b`, for top cells
    /// sharing a codimension-one face. Both directions are stored.
    pub transitions: BTreeMap<(CellId, CellId), QMat>,
    /// `fiber_action[&(g, t)]` maps frame `t` to frame `g·t`.
    pub fiber_action: BTreeMap<(usize, CellId), QMat>,
    /// Relative orientation sign per top cell.
    pub rel_orientation: BTreeMap<CellId, i8>,
}

impl BundleChart {
    /// Builds and validates a chart. The action must already be regular (no
    /// implicit subdivision happens here).
    pub fn new(
        action: GroupAction,
        rank: usize,
        transitions: BTreeMap<(CellId, CellId), QMat>,
        fiber_action: BTreeMap<(usize, CellId), QMat>,
        rel_orientation: BTreeMap<CellId, i8>,
    ) -> Result<Self, BundleError> {
        if !(action.is_regular() && action.orbits_separate_cells()) {
            return Err(BundleError::Invalid(
                "chart action must be regular; subdivide the instance first".into(),
            ));
        }
        let orbifold =
            build_quotient(&action).map_err(|e| BundleError::Invalid(e.to_string()))?;
        let chart = BundleChart { orbifold, rank, transitions, fiber_action, rel_orientation };
        chart.validate()?;
        Ok(chart)
    }

    pub fn complex(&self) -> &crate::simplicial::SimplicialComplex {
        &self.orbifold.action.complex
    }

    pub fn group_order(&self) -> usize {
        self.orbifold.action.group.order()
    }

    pub fn dim(&self) -> usize {
        self.complex().dim
    }

    /// Adjacent top-cell pairs through shared codimension-one faces.
    pub fn adjacent_tops(&self) -> Vec<(CellId, CellId, CellId)> {
        let complex = self.complex();
        let mut by_facet: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
        for t in complex.top_cells() {
            for f in complex.facets(t) {
                by_facet.entry(f).or_default().push(t);
            }
        }
        let mut out = Vec::new();
        for (f, tops) in by_facet {
            if tops.len() == 2 {
                out.push((tops[0], tops[1], f));
            }
        }
        out
    }

    pub fn transition(&self, from: CellId, to: CellId) -> &QMat {
        &self.transitions[&(from, to)]
    }

    pub fn fiber_map(&self, g: usize, top: CellId) -> &QMat {
        &self.fiber_action[&(g, top)]
    }

    fn validate(&self) -> Result<(), BundleError> {
        let complex = self.complex();
        let group = &self.orbifold.action.group;
        let r = self.rank;
        // facets of top cells lie in at most two tops
        for (_, tops) in {
            let mut by_facet: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
            for t in complex.top_cells() {
                for f in complex.facets(t) {
                    by_facet.entry(f).or_default().push(t);
                }
            }
            by_facet
        } {
            if tops.len() > 2 {
                return Err(BundleError::Invalid(
                    "a codimension-one face lies in more than two top cells".into(),
                ));
            }
        }
        for (a, b, _f) in self.adjacent_tops() {
            let tab = self.transitions.get(&(a, b)).ok_or_else(|| {
                BundleError::Invalid(format!("missing transition across tops {a},{b}"))
            })?;
            let tba = self.transitions.get(&(b, a)).ok_or_else(|| {
                BundleError::Invalid(format!("missing transition across tops {b},{a}"))
            })?;
            if tab.rows != r || tab.cols != r || tba.rows != r || tba.cols != r {
                return Err(BundleError::Invalid("transition of wrong shape".into()));
            }
            let prod = tba.mul(tab);
            if prod != QMat::identity(r) {
                return Err(BundleError::Invalid(format!(
                    "transitions across tops {a},{b} are not mutually inverse"
                )));
            }
        }
        for g in 0..group.order() {
            for t in complex.top_cells() {
                let rho = self.fiber_action.get(&(g, t)).ok_or_else(|| {
                    BundleError::Invalid(format!("missing fiber map for element {g} on top {t}"))
                })?;
                if rho.rows != r || rho.cols != r {
                    return Err(BundleError::Invalid("fiber map of wrong shape".into()));
                }
                if r > 0 && rho.det_sign() == 0 {
                    return Err(BundleError::Invalid("fiber map is singular".into()));
                }
            }
        }
        // identity acts as identity; homomorphism property
        for t in complex.top_cells() {
            if *self.fiber_map(group.identity, t) != QMat::identity(r) {
                return Err(BundleError::Invalid("identity fiber map is not the identity".into()));
            }
        }
        let act = &self.orbifold.action;
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul[g][h];
                for t in complex.top_cells() {
                    let ht = act.map_cell(h, t);
                    let lhs = self.fiber_map(g, ht).mul(self.fiber_map(h, t));
                    if lhs != *self.fiber_map(gh, t) {
                        return Err(BundleError::Invalid(format!(
                            "fiber action is not a homomorphism at ({g},{h}) on top {t}"
                        )));
                    }
                }
            }
        }
        // equivariance of transitions
        for (a, b, _f) in self.adjacent_tops() {
            for g in 0..group.order() {
                let (ga, gb) = (act.map_cell(g, a), act.map_cell(g, b));
                let lhs = self.fiber_map(g, b).mul(self.transition(a, b));
                let rhs = self.transition(ga, gb).mul(self.fiber_map(g, a));
                if lhs != rhs {
                    return Err(BundleError::Invalid(format!(
                        "transition across {a},{b} is not equivariant for element {g}"
                    )));
                }
            }
        }
        // relative orientation data on every top cell
        for t in complex.top_cells() {
            let e = self.rel_orientation.get(&t).copied().ok_or_else(|| {
                BundleError::Invalid(format!("missing relative orientation on top {t}"))
            })?;
            if e != 1 && e != -1 {
                return Err(BundleError::Invalid("relative orientation sign must be ±1".into()));
            }
        }
        if r > 0 {
            // consistency across coherently oriented faces
            for (a, b, f) in self.adjacent_tops() {
                let sa = complex.induced_facet_sign(a, f);
                let sb = complex.induced_facet_sign(b, f);
                if sa + sb != 0 {
                    continue; // incoherent base orientation: no constraint here
                }
                let det_sign = self.transition(a, b).det_sign();
                if det_sign == 0 {
                    return Err(BundleError::Invalid("singular transition".into()));
                }
                let (ea, eb) = (self.rel_orientation[&a], self.rel_orientation[&b]);
                if eb != ea * det_sign {
                    return Err(BundleError::Invalid(format!(
                        "relative orientation inconsistent across tops {a},{b}"
                    )));
                }
            }
            // consistency under the group action
            for g in 0..group.order() {
                for t in complex.top_cells() {
                    let gt = act.map_cell(g, t);
                    let base_sign = complex.orientation[t].unwrap_or(1)
                        * complex.orientation[gt].unwrap_or(1)
                        * act.cell_map_parity(g, t);
                    let fiber_sign = self.fiber_map(g, t).det_sign();
                    if self.rel_orientation[&gt]
                        != self.rel_orientation[&t] * base_sign * fiber_sign
                    {
                        return Err(BundleError::Invalid(format!(
                            "relative orientation not equivariant at element {g}, top {t}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Trivial bundle: identity transitions, one constant representation.
    pub fn trivial(
        action: GroupAction,
        rank: usize,
        rep: Vec<QMat>,
    ) -> Result<Self, BundleError> {
        let complex = &action.complex;
        let mut transitions = BTreeMap::new();
        let tops = complex.top_cells();
        let mut by_facet: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
        for &t in &tops {
            for f in complex.facets(t) {
                by_facet.entry(f).or_default().push(t);
            }
        }
        for (_, ts) in by_facet {
            if ts.len() == 2 {
                transitions.insert((ts[0], ts[1]), QMat::identity(rank));
                transitions.insert((ts[1], ts[0]), QMat::identity(rank));
            }
        }
        let mut fiber_action = BTreeMap::new();
        for (g, m) in rep.iter().enumerate() {
            for &t in &tops {
                fiber_action.insert((g, t), m.clone());
            }
        }
        // orientation datum: +1 where the rep has positive determinant flow;
        // base-orientation parity under the action must match the fiber sign
        let mut rel_orientation = BTreeMap::new();
        for &t in &tops {
            rel_orientation.insert(t, 1i8);
        }
        BundleChart::new(action, rank, transitions, fiber_action, rel_orientation)
    }

    /// Holonomy of the transition data around the star of an interior vertex,
    /// expressed in the frame of `start` (a top cell at the vertex). `None`
    /// when the star does not close up into a cycle of top cells.
    pub fn vertex_holonomy(&self, v: usize, start: CellId) -> Option<QMat> {
        let complex = self.complex();
        if complex.dim != 2 {
            return None;
        }
        let vcell = complex.cell_id(&[v])?;
        let star: Vec<CellId> = complex.star_top(vcell);
        if !star.contains(&start) {
            return None;
        }
        // walk around the star through edges containing v
        let mut order = vec![start];
        let mut prev: Option<CellId> = None;
        loop {
            let cur = *order.last().unwrap();
            let mut next = None;
            for f in complex.facets(cur) {
                if !complex.is_face(vcell, f) {
                    continue;
                }
                for &t in &star {
                    if t != cur && Some(t) != prev && complex.facets(t).contains(&f) {
                        next = Some(t);
                        break;
                    }
                }
                if next.is_some() {
                    break;
                }
            }
            let n = next?;
            if n == start {
                order.push(n);
                break;
            }
            prev = Some(cur);
            order.push(n);
            if order.len() > star.len() + 1 {
                return None;
            }
        }
        if order.len() != star.len() + 1 {
            return None;
        }
        let mut hol = QMat::identity(self.rank);
        for w in order.windows(2) {
            hol = self.transition(w[0], w[1]).mul(&hol);
        }
        Some(hol)
    }

    /// Subspace of fiber values a section may take at a vertex: the fixed
    /// space of the star holonomy for interior vertices of surfaces, the whole
    /// fiber otherwise. Returned as a basis in the frame of the first incident
    /// top cell (ordering by cell id).
    pub fn vertex_value_space(&self, v: usize) -> (CellId, Vec<crate::rat::QVec>) {
        let complex = self.complex();
        let vcell = complex.cell_id(&[v]).expect("vertex exists");
        let star = complex.star_top(vcell);
        let anchor = *star.first().expect("vertex has a top coface");
        if complex.dim == 2 {
            if let Some(h) = self.vertex_holonomy(v, anchor) {
                // kernel of (H - I)
                let r = self.rank;
                let mut m = h;
                for i in 0..r {
                    *m.at_mut(i, i) -= crate::rat::int(1);
                }
                return (anchor, kernel_basis(&m));
            }
        }
        let r = self.rank;
        (anchor, (0..r).map(|i| {
            let mut e = crate::rat::qvec_zero(r);
            e[i] = crate::rat::int(1);
            e
        }).collect())
    }
}

/// Kernel basis of a square rational matrix.
pub fn kernel_basis(m: &QMat) -> Vec<crate::rat::QVec> {
    use crate::rat::{int, Rational};
    use num_traits::Zero;
    let rows = m.rows;
    let cols = m.cols;
    let mut a = m.clone();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let p = (row..rows).find(|&i| !a.at(i, col).is_zero());
        let Some(p) = p else { continue };
        // swap
        if p != row {
            for c in 0..cols {
                let tmp = a.at(p, c).clone();
                *a.at_mut(p, c) = a.at(row, c).clone();
                *a.at_mut(row, c) = tmp;
            }
        }
        let piv = a.at(row, col).clone();
        for c in 0..cols {
            *a.at_mut(row, c) /= &piv;
        }
        for i in 0..rows {
            if i == row || a.at(i, col).is_zero() {
                continue;
            }
            let f = a.at(i, col).clone();
            for c in 0..cols {
                let sub = &f * a.at(row, c);
                *a.at_mut(i, c) -= sub;
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let pivots: std::collections::BTreeSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = int(1);
        for (r_i, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = -a.at(r_i, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// Identification of two chart regions over a shared piece of the underlying
/// space: pairs of quotient cells, declared orientation-compatible.
#[derive(Debug, Clone)]
pub struct ChartGlue {
    pub chart_a: usize,
    pub chart_b: usize,
    /// `(quotient cell of chart_a, quotient cell of chart_b)` pairs.
    pub cell_pairs: Vec<(CellId, CellId)>,
}

/// An equivariant bundle over an orbifold presented by one or more
/// global-quotient charts glued along quotient cells.
#[derive(Debug, Clone)]
pub struct EquivariantBundle {
    pub charts: Vec<BundleChart>,
    pub glues: Vec<ChartGlue>,
}

impl EquivariantBundle {
    pub fn single(chart: BundleChart) -> Self {
        EquivariantBundle { charts: vec![chart], glues: vec![] }
    }

    pub fn new(charts: Vec<BundleChart>, glues: Vec<ChartGlue>) -> Result<Self, BundleError> {
        if charts.is_empty() {
            return Err(BundleError::Invalid("bundle needs at least one chart".into()));
        }
        let rank = charts[0].rank;
        if charts.iter().any(|c| c.rank != rank) {
            return Err(BundleError::Invalid("charts of unequal rank".into()));
        }
        for glue in &glues {
            if glue.chart_a >= charts.len() || glue.chart_b >= charts.len() {
                return Err(BundleError::Invalid("glue references a missing chart".into()));
            }
            let (a, b) = (&charts[glue.chart_a], &charts[glue.chart_b]);
            for &(ca, cb) in &glue.cell_pairs {
                if ca >= a.orbifold.quotient.cell_count() || cb >= b.orbifold.quotient.cell_count()
                {
                    return Err(BundleError::Invalid("glue references a missing cell".into()));
                }
                if a.orbifold.quotient.cell_dim(ca) != b.orbifold.quotient.cell_dim(cb) {
                    return Err(BundleError::Invalid("glued cells of different dimension".into()));
                }
                if a.orbifold.isotropy[ca] != b.orbifold.isotropy[cb] {
                    return Err(BundleError::Invalid(format!(
                        "glued cells have different isotropy ({} vs {})",
                        a.orbifold.isotropy[ca], b.orbifold.isotropy[cb]
                    )));
                }
            }
        }
        Ok(EquivariantBundle { charts, glues })
    }

    pub fn rank(&self) -> usize {
        self.charts[0].rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::GroupAction;
    use crate::group::FiniteGroup;
    use crate::rat::{int, rat};
    use crate::simplicial::{bipyramid, circle};

    pub(crate) fn trivial_circle_bundle(n: usize, rank: usize) -> BundleChart {
        let action = GroupAction::trivial(circle(n));
        let rep = vec![QMat::identity(rank)];
        BundleChart::trivial(action, rank, rep).unwrap()
    }

    #[test]
    fn trivial_bundle_valid() {
        let b = trivial_circle_bundle(5, 1);
        assert_eq!(b.rank, 1);
        assert_eq!(b.dim(), 1);
    }

    #[test]
    fn z2_sign_bundle_on_sphere() {
        // antipodal-free Z_2 is hard simplicially; use the rotation action with
        // a sign representation on a rank-2 fiber
        let complex = bipyramid(4);
        let group = FiniteGroup::cyclic(2);
        let perms = vec![
            (0..6).collect::<Vec<_>>(),
            vec![0, 1, 4, 5, 2, 3], // rotate equator by 2
        ];
        let action = GroupAction::new(group, complex, perms).unwrap();
        let rep = vec![QMat::identity(2), {
            let mut m = QMat::zero(2, 2);
            *m.at_mut(0, 0) = int(-1);
            *m.at_mut(1, 1) = int(-1);
            m
        }];
        let b = BundleChart::trivial(action, 2, rep).unwrap();
        assert_eq!(b.rank, 2);
    }

    #[test]
    fn bad_transition_rejected() {
        let mut b = trivial_circle_bundle(4, 1);
        // break invertibility pairing
        let key = *b.transitions.keys().next().unwrap();
        let mut m = QMat::identity(1);
        *m.at_mut(0, 0) = rat(2, 1);
        b.transitions.insert(key, m);
        assert!(b.validate().is_err());
    }

    #[test]
    fn kernel_basis_examples() {
        use num_traits::Zero;
        let mut m = QMat::zero(2, 2);
        *m.at_mut(0, 0) = int(1);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(k[0][0].is_zero() && k[0][1] == int(1));
        let id = QMat::identity(3);
        assert!(kernel_basis(&id).is_empty());
        let z = QMat::zero(2, 2);
        assert_eq!(kernel_basis(&z).len(), 2);
    }
}
