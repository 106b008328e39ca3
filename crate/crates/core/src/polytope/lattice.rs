//! Face lattice from vertex-facet incidences, with cached pulling triangulations.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::dd::is_subset_sorted;

#[derive(Clone, Debug)]
pub struct Face {
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
    /// Indices into the level below.
    pub children: Vec<usize>,
}

/// All non-empty faces grouped by dimension.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    levels: Vec<Vec<Face>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    triangulations: Vec<Vec<OnceLock<Vec<Vec<usize>>>>>,
}

impl FaceLattice {
    /// Builds the lattice of a polytope of affine dimension `top` with `nv`
    /// vertices whose facets have the given vertex sets.
    pub fn build(nv: usize, top: usize, facet_sets: &[&[usize]]) -> Self {
        let mut levels: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
        let mut index: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); top + 1];
        if nv == 0 {
            return FaceLattice {
                levels: Vec::new(),
                index: Vec::new(),
                triangulations: Vec::new(),
            };
        }
        let all: Vec<usize> = (0..nv).collect();
        let sets: Vec<&[usize]> = facet_sets.iter().copied().filter(|s| s.len() < nv).collect();
        index[top].insert(all.clone(), 0);
        levels[top].push(Face {
            vertices: all,
            children: Vec::new(),
        });

        for level in (1..=top).rev() {
            let mut next: Vec<Face> = Vec::new();
            let mut next_index: HashMap<Vec<usize>, usize> = HashMap::new();
            for fi in 0..levels[level].len() {
                let face = levels[level][fi].vertices.clone();
                let mut cands: Vec<Vec<usize>> = sets
                    .iter()
                    .map(|s| {
                        face.iter()
                            .copied()
                            .filter(|v| s.binary_search(v).is_ok())
                            .collect::<Vec<_>>()
                    })
                    .filter(|c: &Vec<usize>| !c.is_empty() && c.len() < face.len())
                    .collect();
                cands.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
                cands.dedup();
                let mut maximal: Vec<Vec<usize>> = Vec::new();
                for c in cands {
                    if !maximal.iter().any(|m| is_subset_sorted(&c, m)) {
                        maximal.push(c);
                    }
                }
                if level == 1 {
                    // Edges: the maximal proper subsets are the two endpoints.
                    maximal.retain(|m| m.len() == 1);
                }
                let mut children = Vec::with_capacity(maximal.len());
                for m in maximal {
                    let id = *next_index.entry(m.clone()).or_insert_with(|| {
                        next.push(Face {
                            vertices: m,
                            children: Vec::new(),
                        });
                        next.len() - 1
                    });
                    children.push(id);
                }
                levels[level][fi].children = children;
            }
            levels[level - 1] = next;
            index[level - 1] = next_index;
        }
        let triangulations = levels
            .iter()
            .map(|l| l.iter().map(|_| OnceLock::new()).collect())
            .collect();
        FaceLattice {
            levels,
            index,
            triangulations,
        }
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    pub fn level(&self, dim: usize) -> &[Face] {
        self.levels.get(dim).map_or(&[], Vec::as_slice)
    }

    /// Number of faces in each dimension, from vertices upward.
    pub fn f_vector(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn find(&self, dim: usize, vertices: &[usize]) -> Option<usize> {
        self.index.get(dim)?.get(vertices).copied()
    }

    /// Pulling triangulation of a face: simplices as vertex index lists of length `dim + 1`.
    pub fn simplices(&self, dim: usize, id: usize) -> &[Vec<usize>] {
        self.triangulations[dim][id].get_or_init(|| {
            let face = &self.levels[dim][id];
            if dim == 0 {
                return vec![face.vertices.clone()];
            }
            let apex = face.vertices[0];
            let mut out = Vec::new();
            for &c in &face.children {
                let child = &self.levels[dim - 1][c];
                if child.vertices.binary_search(&apex).is_ok() {
                    continue;
                }
                for s in self.simplices(dim - 1, c) {
                    let mut simplex = Vec::with_capacity(dim + 1);
                    simplex.push(apex);
                    simplex.extend_from_slice(s);
                    out.push(simplex);
                }
            }
            out
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_lattice() {
        // Square with vertices 0..4 in cyclic order.
        let facets: Vec<Vec<usize>> = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]];
        let refs: Vec<&[usize]> = facets.iter().map(Vec::as_slice).collect();
        let lat = FaceLattice::build(4, 2, &refs);
        assert_eq!(lat.f_vector(), vec![4, 4, 1]);
        assert_eq!(lat.simplices(2, 0).len(), 2);
    }
}
