//! Coverings of quotient complexes.
//!
//! A covering of a global quotient [K/G] is presented by a finite G-set J: the
//! total space is the quotient of K x J by the diagonal action, and the local
//! model over a point with isotropy G_x is the list of stabilizer subgroups of
//! the G_x-orbits on J. The degree is |J| over every chart.

use crate::action::{build_quotient, ActionError, GroupAction, OrbifoldComplex};
use crate::simplicial::CellId;
use std::collections::BTreeMap;

/// Local model of a covering over one chart point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringChart {
    /// Quotient cell of the target this chart is centered at.
    pub base_orbit: CellId,
    /// Isotropy group of the chart center, as an element list.
    pub chart_group: Vec<usize>,
    /// Stabilizer subgroups, one per orbit of the chart group on the sheets.
    pub subgroups: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct OrbifoldCovering {
    pub target: OrbifoldComplex,
    /// Permutation action of the group on the sheet set J.
    pub sheet_perm: Vec<Vec<usize>>,
    pub source: OrbifoldComplex,
    /// Declared degree `c = |J|`.
    pub degree: usize,
    /// Per-chart local models, one per quotient cell of the target.
    pub charts: Vec<CoveringChart>,
    /// Component index per source quotient cell, and per-component degrees.
    pub component_of_source_cell: Vec<usize>,
    pub component_degrees: Vec<usize>,
    /// Sheet over which each source total-space vertex lies.
    pub sheet_of_vertex: Vec<usize>,
    /// Carrier cell in the (unregularized) target complex under projection.
    pub base_carrier_of_vertex: Vec<CellId>,
}

impl OrbifoldCovering {
    /// Builds the covering of `target` classified by the sheet action.
    pub fn from_sheets(
        target: &OrbifoldComplex,
        sheet_perm: Vec<Vec<usize>>,
    ) -> Result<Self, ActionError> {
        let group = &target.action.group;
        if sheet_perm.len() != group.order() {
            return Err(ActionError::Invalid("one sheet permutation per element".into()));
        }
        let sheets = sheet_perm[group.identity].len();
        if sheets == 0 {
            return Err(ActionError::Invalid("covering needs at least one sheet".into()));
        }
        for p in &sheet_perm {
            if p.len() != sheets {
                return Err(ActionError::Invalid("sheet permutations of unequal length".into()));
            }
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul[g][h];
                for j in 0..sheets {
                    if sheet_perm[gh][j] != sheet_perm[g][sheet_perm[h][j]] {
                        return Err(ActionError::Invalid("sheet action is not a homomorphism".into()));
                    }
                }
            }
        }
        // total space: |J| disjoint copies of the base complex, diagonal action
        let base = &target.action.complex;
        let nv = base.vertex_count;
        let mut maximal = Vec::new();
        for j in 0..sheets {
            for t in 0..base.cell_count() {
                maximal.push(base.cell(t).iter().map(|&v| j * nv + v).collect::<Vec<_>>());
            }
        }
        let mut total = crate::simplicial::SimplicialComplex::from_maximal(sheets * nv, &maximal)
            .map_err(|e| ActionError::Invalid(e.to_string()))?;
        let mut signs = BTreeMap::new();
        for j in 0..sheets {
            for t in base.top_cells() {
                let cell: Vec<usize> = base.cell(t).iter().map(|&v| j * nv + v).collect();
                signs.insert(cell, base.orientation[t].unwrap_or(1));
            }
        }
        total = total.with_orientations(&signs).map_err(|e| ActionError::Invalid(e.to_string()))?;
        let perms: Vec<Vec<usize>> = (0..group.order())
            .map(|g| {
                (0..sheets * nv)
                    .map(|x| {
                        let (j, v) = (x / nv, x % nv);
                        sheet_perm[g][j] * nv + target.action.vertex_perm[g][v]
                    })
                    .collect()
            })
            .collect();
        let mut action = GroupAction::new(group.clone(), total, perms)?;
        let mut sheet_of_vertex: Vec<usize> = (0..sheets * nv).map(|x| x / nv).collect();
        let mut base_carrier_of_vertex: Vec<CellId> =
            (0..sheets * nv).map(|x| base.cell_id(&[x % nv]).unwrap()).collect();
        // regularize while tracking sheets and carriers through subdivisions
        for _ in 0..3 {
            if action.is_regular() && action.orbits_separate_cells() {
                break;
            }
            let old = action.clone();
            action = action.subdivide();
            let mut new_sheet = Vec::with_capacity(old.complex.cell_count());
            let mut new_carrier = Vec::with_capacity(old.complex.cell_count());
            for c in 0..old.complex.cell_count() {
                let verts = old.complex.cell(c);
                new_sheet.push(sheet_of_vertex[verts[0]]);
                // carrier: smallest base cell containing all vertex carriers
                let mut vs: Vec<usize> = Vec::new();
                for &v in verts {
                    for &bv in base.cell(base_carrier_of_vertex[v]) {
                        vs.push(bv);
                    }
                }
                vs.sort_unstable();
                vs.dedup();
                let carrier = base.cell_id(&vs).ok_or_else(|| {
                    ActionError::Invalid("projection of a cell is not a base cell".into())
                })?;
                new_carrier.push(carrier);
            }
            sheet_of_vertex = new_sheet;
            base_carrier_of_vertex = new_carrier;
        }
        if !(action.is_regular() && action.orbits_separate_cells()) {
            return Err(ActionError::Invalid("covering action failed to regularize".into()));
        }
        let source = build_quotient(&action)?;
        // charts: one per quotient cell of the target
        let mut charts = Vec::new();
        for orbit in 0..target.quotient.cell_count() {
            let rep = target.orbit_rep[orbit];
            let chart_group = target.action.cell_stabilizer(rep);
            let mut seen = vec![false; sheets];
            let mut subgroups = Vec::new();
            for j in 0..sheets {
                if seen[j] {
                    continue;
                }
                for &g in &chart_group {
                    seen[sheet_perm[g][j]] = true;
                }
                subgroups.push(
                    chart_group.iter().copied().filter(|&g| sheet_perm[g][j] == j).collect(),
                );
            }
            charts.push(CoveringChart { base_orbit: orbit, chart_group, subgroups });
        }
        // component bookkeeping on the source quotient
        let comp_vertex = source.quotient.connected_components();
        let component_of_source_cell: Vec<usize> = (0..source.quotient.cell_count())
            .map(|c| comp_vertex[source.quotient.cell(c)[0]])
            .collect();
        let n_comp = component_of_source_cell.iter().copied().max().unwrap_or(0) + 1;
        let mut component_degrees = vec![0usize; n_comp];
        {
            let mut seen = vec![false; sheets];
            for j in 0..sheets {
                if seen[j] {
                    continue;
                }
                let mut orb = Vec::new();
                let mut stack = vec![j];
                seen[j] = true;
                while let Some(x) = stack.pop() {
                    orb.push(x);
                    for g in 0..group.order() {
                        let y = sheet_perm[g][x];
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
                // locate the component containing this sheet orbit
                let vcell = (0..source.action.complex.cell_count()).find(|&c| {
                    let cell = source.action.complex.cell(c);
                    cell.len() == 1 && sheet_of_vertex[cell[0]] == orb[0]
                });
                if let Some(vc) = vcell {
                    let comp = component_of_source_cell[source.cell_to_orbit[vc]];
                    component_degrees[comp] += orb.len();
                }
            }
        }
        Ok(OrbifoldCovering {
            target: target.clone(),
            sheet_perm,
            source,
            degree: sheets,
            charts,
            component_of_source_cell,
            component_degrees,
            sheet_of_vertex,
            base_carrier_of_vertex,
        })
    }

    pub fn sheets(&self) -> usize {
        self.degree
    }
}

/// Pass/fail report for covering verification.
#[derive(Debug, Clone, Default)]
pub struct CoveringReport {
    pub failures: Vec<String>,
}

impl CoveringReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the per-chart degree sums and the commuting square of quotient maps.
pub fn verify_covering(cov: &OrbifoldCovering) -> CoveringReport {
    let mut report = CoveringReport::default();
    let group = &cov.target.action.group;
    for chart in &cov.charts {
        let gx = &chart.chart_group;
        if !group.is_subgroup(gx) {
            report
                .failures
                .push(format!("chart at orbit {}: chart group is not a subgroup", chart.base_orbit));
            continue;
        }
        let mut sum = 0usize;
        for (a, sub) in chart.subgroups.iter().enumerate() {
            if sub.is_empty()
                || !group.is_subgroup(sub)
                || !sub.iter().all(|g| gx.contains(g))
            {
                report.failures.push(format!(
                    "chart at orbit {}: entry {a} is not a subgroup of the chart group",
                    chart.base_orbit
                ));
                continue;
            }
            sum += gx.len() / sub.len();
        }
        if sum != cov.degree {
            report.failures.push(format!(
                "chart at orbit {}: coset sizes sum to {sum}, declared degree {}",
                chart.base_orbit, cov.degree
            ));
        }
    }
    if cov.component_degrees.iter().sum::<usize>() != cov.degree {
        report.failures.push(format!(
            "component degrees {:?} do not sum to {}",
            cov.component_degrees, cov.degree
        ));
    }
    // commuting square, checked on the total space: every cell lies over a
    // single sheet and the projection is equivariant
    let src = &cov.source.action;
    for c in 0..src.complex.cell_count() {
        let verts = src.complex.cell(c);
        let sheet = cov.sheet_of_vertex[verts[0]];
        if verts.iter().any(|&v| cov.sheet_of_vertex[v] != sheet) {
            report.failures.push(format!("total cell {c} straddles sheets"));
        }
    }
    for g in 0..group.order() {
        for v in 0..src.complex.vertex_count {
            let gv = src.vertex_perm[g][v];
            if cov.sheet_of_vertex[gv] != cov.sheet_perm[g][cov.sheet_of_vertex[v]] {
                report
                    .failures
                    .push(format!("sheet projection not equivariant at element {g}, vertex {v}"));
            }
        }
    }
    report
}
