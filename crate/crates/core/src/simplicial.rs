//! Finite simplicial complexes with orientation data.
//!
//! Cells are sorted vertex tuples; a complex stores every face of every
//! simplex. Orientation signs live on the cells of maximal dimension.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("invalid complex: {0}")]
    Invalid(String),
}

pub type CellId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertex_count: usize,
    /// All cells, sorted by (dimension, vertex tuple). Each is a sorted vertex list.
    pub cells: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, CellId>,
    pub dim: usize,
    /// Orientation sign per cell; `Some(±1)` only on cells of maximal dimension.
    pub orientation: Vec<Option<i8>>,
}

impl SimplicialComplex {
    /// Builds a complex from its maximal simplices; faces are generated. All
    /// top-dimensional simplices get orientation sign `+1` by default.
    pub fn from_maximal(vertex_count: usize, maximal: &[Vec<usize>]) -> Result<Self, ComplexError> {
        let mut cellset: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in maximal {
            let mut v = s.clone();
            v.sort_unstable();
            v.dedup();
            if v.len() != s.len() {
                return Err(ComplexError::Invalid(format!("simplex {s:?} repeats a vertex")));
            }
            if v.iter().any(|&x| x >= vertex_count) {
                return Err(ComplexError::Invalid(format!("simplex {s:?} out of range")));
            }
            for sub in subsets_nonempty(&v) {
                cellset.insert(sub);
            }
        }
        if cellset.is_empty() {
            return Err(ComplexError::Invalid("empty complex".into()));
        }
        let mut cells: Vec<Vec<usize>> = cellset.into_iter().collect();
        cells.sort_by_key(|c| (c.len(), c.clone()));
        let dim = cells.last().unwrap().len() - 1;
        let index: BTreeMap<Vec<usize>, CellId> =
            cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let orientation = cells
            .iter()
            .map(|c| if c.len() == dim + 1 { Some(1i8) } else { None })
            .collect();
        Ok(SimplicialComplex { vertex_count, cells, index, dim, orientation })
    }

    pub fn with_orientations(
        mut self,
        signs: &BTreeMap<Vec<usize>, i8>,
    ) -> Result<Self, ComplexError> {
        for (cell, &s) in signs {
            let id = self
                .cell_id(cell)
                .ok_or_else(|| ComplexError::Invalid(format!("unknown cell {cell:?}")))?;
            if self.cells[id].len() != self.dim + 1 {
                return Err(ComplexError::Invalid("orientation on a non-top cell".into()));
            }
            if s != 1 && s != -1 {
                return Err(ComplexError::Invalid("orientation sign must be ±1".into()));
            }
            self.orientation[id] = Some(s);
        }
        Ok(self)
    }

    pub fn cell_id(&self, cell: &[usize]) -> Option<CellId> {
        self.index.get(cell).copied()
    }

    pub fn cell(&self, id: CellId) -> &[usize] {
        &self.cells[id]
    }

    pub fn cell_dim(&self, id: CellId) -> usize {
        self.cells[id].len() - 1
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn top_cells(&self) -> Vec<CellId> {
        (0..self.cells.len()).filter(|&i| self.cell_dim(i) == self.dim).collect()
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<CellId> {
        (0..self.cells.len()).filter(|&i| self.cell_dim(i) == d).collect()
    }

    /// Codimension-one faces of a cell.
    pub fn facets(&self, id: CellId) -> Vec<CellId> {
        let cell = &self.cells[id];
        if cell.len() == 1 {
            return vec![];
        }
        (0..cell.len())
            .map(|i| {
                let mut f = cell.clone();
                f.remove(i);
                self.index[&f]
            })
            .collect()
    }

    /// All faces (ids), the cell itself included.
    pub fn faces(&self, id: CellId) -> Vec<CellId> {
        subsets_nonempty(&self.cells[id]).iter().map(|f| self.index[f]).collect()
    }

    pub fn is_face(&self, face: CellId, of: CellId) -> bool {
        let f = &self.cells[face];
        let c = &self.cells[of];
        f.iter().all(|v| c.binary_search(v).is_ok())
    }

    /// Cofaces of a cell (cells having it as a face), the cell included.
    pub fn star(&self, id: CellId) -> Vec<CellId> {
        (0..self.cells.len()).filter(|&c| self.is_face(id, c)).collect()
    }

    /// Top-dimensional cofaces of a cell.
    pub fn star_top(&self, id: CellId) -> Vec<CellId> {
        self.star(id).into_iter().filter(|&c| self.cell_dim(c) == self.dim).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for c in &self.cells {
            if (c.len() - 1) % 2 == 0 {
                chi += 1;
            } else {
                chi -= 1;
            }
        }
        chi
    }

    pub fn connected_components(&self) -> Vec<usize> {
        // component id per vertex, via edges
        let mut comp: Vec<usize> = (0..self.vertex_count).collect();
        let mut adj = vec![Vec::new(); self.vertex_count];
        for c in &self.cells {
            if c.len() == 2 {
                adj[c[0]].push(c[1]);
                adj[c[1]].push(c[0]);
            }
        }
        let mut seen = vec![false; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            if seen[v] {
                continue;
            }
            let id = next;
            next += 1;
            let mut queue = VecDeque::from([v]);
            seen[v] = true;
            comp[v] = id;
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp[y] = id;
                        queue.push_back(y);
                    }
                }
            }
        }
        comp
    }

    /// Induced orientation sign of facet `facet` of oriented top cell `top`:
    /// `(-1)^i * o(top)` where `i` is the position of the dropped vertex.
    pub fn induced_facet_sign(&self, top: CellId, facet: CellId) -> i8 {
        let t = &self.cells[top];
        let f = &self.cells[facet];
        let dropped = t.iter().position(|v| f.binary_search(v).is_err()).unwrap();
        let o = self.orientation[top].unwrap_or(1);
        if dropped % 2 == 0 {
            o
        } else {
            -o
        }
    }

    /// Checks that every codimension-one face of top cells lies in at most two
    /// top cells and, where it lies in exactly two, the induced orientations
    /// cancel. Returns offending facet ids.
    pub fn orientation_defects(&self) -> Vec<CellId> {
        if self.dim == 0 {
            return vec![];
        }
        let mut incident: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
        for t in self.top_cells() {
            for f in self.facets(t) {
                incident.entry(f).or_default().push(t);
            }
        }
        let mut bad = Vec::new();
        for (f, tops) in incident {
            match tops.len() {
                1 => {}
                2 => {
                    let s0 = self.induced_facet_sign(tops[0], f);
                    let s1 = self.induced_facet_sign(tops[1], f);
                    if s0 + s1 != 0 {
                        bad.push(f);
                    }
                }
                _ => bad.push(f),
            }
        }
        bad
    }

    /// Closed pseudomanifold check: pure, every facet in exactly two top cells,
    /// orientations cancelling.
    pub fn is_closed_oriented_pseudomanifold(&self) -> bool {
        let pure = (0..self.cell_count())
            .all(|c| self.cell_dim(c) == self.dim || !self.star_top(c).is_empty());
        if !pure {
            return false;
        }
        if self.dim == 0 {
            return true;
        }
        let mut counts: BTreeMap<CellId, usize> = BTreeMap::new();
        for t in self.top_cells() {
            for f in self.facets(t) {
                *counts.entry(f).or_default() += 1;
            }
        }
        let all_two = self
            .cells_of_dim(self.dim - 1)
            .iter()
            .all(|f| counts.get(f).copied().unwrap_or(0) == 2);
        all_two && self.orientation_defects().is_empty()
    }

    /// Barycentric subdivision. New vertex `i` is the barycenter of old cell
    /// `i`; new top simplices are maximal chains of old cells, with orientation
    /// transported so the subdivided fundamental chain matches the old one.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        let mut signs: BTreeMap<Vec<usize>, i8> = BTreeMap::new();
        for t in self.top_cells() {
            let verts = self.cells[t].clone();
            let o = self.orientation[t].unwrap_or(1);
            for (perm, parity) in permutations_with_parity(verts.len()) {
                // chain c_0 < c_1 < ... given by prefixes of the permuted vertex list
                let mut chain = Vec::with_capacity(verts.len());
                let mut prefix: Vec<usize> = Vec::new();
                for &p in &perm {
                    prefix.push(verts[p]);
                    let mut s = prefix.clone();
                    s.sort_unstable();
                    chain.push(self.index[&s]);
                }
                // chain cell ids increase strictly with dimension, so the
                // chain order is already the sorted order
                signs.insert(chain.clone(), o * parity);
                maximal.push(chain);
            }
        }
        let sub = SimplicialComplex::from_maximal(self.cell_count(), &maximal).unwrap();
        sub.with_orientations(&signs).unwrap()
    }
}

fn subsets_nonempty(cell: &[usize]) -> Vec<Vec<usize>> {
    let n = cell.len();
    let mut out = Vec::with_capacity((1 << n) - 1);
    for mask in 1u32..(1 << n) {
        let mut s = Vec::new();
        for (i, &v) in cell.iter().enumerate() {
            if mask & (1 << i) != 0 {
                s.push(v);
            }
        }
        out.push(s);
    }
    out
}

fn permutations_with_parity(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    fn rec(arr: &mut Vec<usize>, k: usize, out: &mut Vec<(Vec<usize>, i8)>) {
        if k == 1 {
            let parity = permutation_parity(arr);
            out.push((arr.clone(), parity));
            return;
        }
        for i in 0..k {
            rec(arr, k - 1, out);
            if k % 2 == 0 {
                arr.swap(i, k - 1);
            } else {
                arr.swap(0, k - 1);
            }
        }
    }
    rec(&mut idx, n, &mut out);
    out
}

pub fn permutation_parity(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut parity = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len % 2 == 0 {
            parity = -parity;
        }
    }
    parity
}

// -- standard models --------------------------------------------------------

/// Cycle with `n >= 3` vertices (a circle).
pub fn circle(n: usize) -> SimplicialComplex {
    assert!(n >= 3);
    let maximal: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    // orient edges head-to-tail: edge {i, i+1} as [i, i+1] is +, the wrap edge
    // {0, n-1} as sorted [0, n-1] runs against the cycle, so it gets -
    let mut signs = BTreeMap::new();
    for i in 0..n {
        let mut cell = vec![i, (i + 1) % n];
        cell.sort_unstable();
        signs.insert(cell, if i + 1 == n { -1 } else { 1 });
    }
    SimplicialComplex::from_maximal(n, &maximal)
        .unwrap()
        .with_orientations(&signs)
        .unwrap()
}

/// Bipyramid over a `k`-gon (`k >= 3`): a sphere with vertices
/// `N = 0`, `S = 1`, equator `2..2+k`.
pub fn bipyramid(k: usize) -> SimplicialComplex {
    assert!(k >= 3);
    let eq = |i: usize| 2 + (i % k);
    let mut maximal = Vec::new();
    let mut signs = BTreeMap::new();
    for i in 0..k {
        let (a, b) = (eq(i), eq(i + 1));
        let north = vec![0, a, b];
        let south = vec![1, a, b];
        // orient: north triangles as [N, a, b], south as [S, b, a]
        let mut nc = north.clone();
        nc.sort_unstable();
        signs.insert(nc.clone(), orientation_sign_of(&[0, a, b]));
        let mut sc = south.clone();
        sc.sort_unstable();
        signs.insert(sc.clone(), orientation_sign_of(&[1, b, a]));
        maximal.push(north);
        maximal.push(south);
    }
    SimplicialComplex::from_maximal(2 + k, &maximal)
        .unwrap()
        .with_orientations(&signs)
        .unwrap()
}

/// Sign relating the given vertex ordering to the sorted ordering.
pub fn orientation_sign_of(ordered: &[usize]) -> i8 {
    let mut sorted = ordered.to_vec();
    sorted.sort_unstable();
    let perm: Vec<usize> =
        ordered.iter().map(|v| sorted.binary_search(v).unwrap()).collect();
    permutation_parity(&perm)
}

/// Flat torus: `n x m` vertex grid (`n, m >= 3`), each square split into two
/// triangles, opposite sides identified.
pub fn torus(n: usize, m: usize) -> SimplicialComplex {
    assert!(n >= 3 && m >= 3);
    let v = |i: usize, j: usize| (i % n) * m + (j % m);
    let mut maximal = Vec::new();
    let mut signs = BTreeMap::new();
    for i in 0..n {
        for j in 0..m {
            let a = v(i, j);
            let b = v(i + 1, j);
            let c = v(i + 1, j + 1);
            let d = v(i, j + 1);
            for tri in [[a, b, c], [a, c, d]] {
                let mut cell = tri.to_vec();
                cell.sort_unstable();
                signs.insert(cell, orientation_sign_of(&tri));
                maximal.push(tri.to_vec());
            }
        }
    }
    SimplicialComplex::from_maximal(n * m, &maximal)
        .unwrap()
        .with_orientations(&signs)
        .unwrap()
}

/// Interval subdivided into `n` edges, vertices `0..=n`, edges oriented left
/// to right.
pub fn interval(n: usize) -> SimplicialComplex {
    assert!(n >= 1);
    let maximal: Vec<Vec<usize>> = (0..n).map(|i| vec![i, i + 1]).collect();
    SimplicialComplex::from_maximal(n + 1, &maximal).unwrap()
}

/// Fan disk: center `0` with a ring `1..=n` (`n >= 3`), triangles
/// `(0, i, i+1)`, oriented consistently.
pub fn fan_disk(n: usize) -> SimplicialComplex {
    assert!(n >= 3);
    let ring = |i: usize| 1 + (i % n);
    let mut maximal = Vec::new();
    let mut signs = BTreeMap::new();
    for i in 0..n {
        let tri = [0, ring(i), ring(i + 1)];
        let mut cell = tri.to_vec();
        cell.sort_unstable();
        signs.insert(cell, orientation_sign_of(&tri));
        maximal.push(tri.to_vec());
    }
    SimplicialComplex::from_maximal(1 + n, &maximal)
        .unwrap()
        .with_orientations(&signs)
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristics() {
        assert_eq!(bipyramid(4).euler_characteristic(), 2);
        assert_eq!(bipyramid(6).euler_characteristic(), 2);
        assert_eq!(torus(3, 3).euler_characteristic(), 0);
        assert_eq!(circle(5).euler_characteristic(), 0);
        let pt = SimplicialComplex::from_maximal(1, &[vec![0]]).unwrap();
        assert_eq!(pt.euler_characteristic(), 1);
    }

    #[test]
    fn closed_oriented() {
        assert!(bipyramid(5).is_closed_oriented_pseudomanifold());
        assert!(torus(3, 4).is_closed_oriented_pseudomanifold());
        assert!(circle(4).is_closed_oriented_pseudomanifold());
        assert!(!interval(3).is_closed_oriented_pseudomanifold());
        assert!(!fan_disk(4).is_closed_oriented_pseudomanifold());
    }

    #[test]
    fn orientation_defect_detection() {
        let mut c = bipyramid(3);
        let t = c.top_cells()[0];
        c.orientation[t] = Some(-c.orientation[t].unwrap());
        assert!(!c.orientation_defects().is_empty());
    }

    #[test]
    fn subdivision_preserves_invariants() {
        for k in [3usize, 4] {
            let c = bipyramid(k);
            let s = c.barycentric_subdivision();
            assert_eq!(s.euler_characteristic(), 2);
            assert!(s.is_closed_oriented_pseudomanifold());
        }
        let t = torus(3, 3);
        let s = t.barycentric_subdivision();
        assert_eq!(s.euler_characteristic(), 0);
        assert!(s.is_closed_oriented_pseudomanifold());
        let c = circle(3).barycentric_subdivision();
        assert_eq!(c.euler_characteristic(), 0);
        assert!(c.is_closed_oriented_pseudomanifold());
    }

    #[test]
    fn stars_and_faces() {
        let c = fan_disk(4);
        let center = c.cell_id(&[0]).unwrap();
        assert_eq!(c.star_top(center).len(), 4);
        let t = c.top_cells()[0];
        assert_eq!(c.facets(t).len(), 3);
        assert_eq!(c.faces(t).len(), 7);
    }
}
