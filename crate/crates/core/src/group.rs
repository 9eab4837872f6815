//! Finite groups given by multiplication tables.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    /// `mul[g][h] = g * h`
    pub mul: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
    pub generators: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = mul.len();
        if n == 0 {
            return Err(GroupError::Invalid("empty multiplication table".into()));
        }
        for row in &mul {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(GroupError::Invalid("malformed multiplication table".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| GroupError::Invalid("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or_else(|| GroupError::Invalid(format!("element {g} has no inverse")))?;
            inverse[g] = inv;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::Invalid(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let generators = minimal_generators(&mul, identity);
        Ok(FiniteGroup { mul, identity, inverse, generators })
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(mul).unwrap()
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    /// Subgroup generated by a set of elements, as a sorted element list.
    pub fn span(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = vec![false; self.order()];
        set[self.identity] = true;
        let mut stack: Vec<usize> = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                for y in [self.mul[x][g], self.mul[g][x]] {
                    if !set[y] {
                        set[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        (0..self.order()).filter(|&g| set[g]).collect()
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        if !elements.contains(&self.identity) {
            return false;
        }
        elements.iter().all(|&a| {
            elements.contains(&self.inverse[a])
                && elements.iter().all(|&b| elements.contains(&self.mul[a][b]))
        })
    }

    /// Left cosets of a subgroup, each sorted; the subgroup itself comes first.
    pub fn left_cosets(&self, subgroup: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut cosets = Vec::new();
        for rep in 0..self.order() {
            if seen[rep] {
                continue;
            }
            let mut coset: Vec<usize> = subgroup.iter().map(|&h| self.mul[rep][h]).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }
}

fn minimal_generators(mul: &[Vec<usize>], identity: usize) -> Vec<usize> {
    let n = mul.len();
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![false; n];
    span[identity] = true;
    let mut count = 1;
    while count < n {
        let next = (0..n).find(|&g| !span[g]).unwrap();
        gens.push(next);
        // close under multiplication
        let mut changed = true;
        span[next] = true;
        count += 1;
        while changed {
            changed = false;
            for a in 0..n {
                if !span[a] {
                    continue;
                }
                for b in 0..n {
                    if !span[b] {
                        continue;
                    }
                    let c = mul[a][b];
                    if !span[c] {
                        span[c] = true;
                        count += 1;
                        changed = true;
                    }
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        let g = FiniteGroup::cyclic(6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity, 0);
        assert_eq!(g.inverse[2], 4);
        assert_eq!(g.span(&[2]), vec![0, 2, 4]);
        assert!(g.is_subgroup(&[0, 3]));
        assert!(!g.is_subgroup(&[0, 2]) || g.is_subgroup(&[0, 2, 4]));
        assert_eq!(g.left_cosets(&[0, 3]).len(), 3);
    }

    #[test]
    fn bad_tables_rejected() {
        // a latin square that is not associative
        let mul = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        assert!(FiniteGroup::new(mul).is_err());
    }
}
