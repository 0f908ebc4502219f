use std::collections::HashMap;

use crate::error::Result;
use crate::quiver::{Path, Quiver};

/// One block of a path-indexed direct sum at a fixed vertex.
#[derive(Debug, Clone)]
pub(crate) struct Block {
    pub part: usize,
    pub path: Path,
    pub offset: usize,
    pub width: usize,
}

/// Basis bookkeeping for `⊕_k e^{x_k}(K^{n_k})` where each summand is
/// indexed either by paths out of `x_k` (left adjoint) or into `x_k`
/// (right adjoint). Blocks at a vertex are ordered by part, then path.
#[derive(Debug, Clone)]
pub(crate) struct SumLayout {
    pub blocks: Vec<Vec<Block>>,
    index: Vec<HashMap<(usize, Vec<usize>), usize>>,
    pub dims: Vec<usize>,
}

impl SumLayout {
    /// Part `k` contributes one block per path in `Q(x_k, w)`.
    pub fn lambda(q: &Quiver, parts: &[(usize, usize)]) -> Result<Self> {
        let n = q.vertex_count();
        let mut per_vertex: Vec<Vec<(usize, Path, usize)>> = vec![Vec::new(); n];
        for (k, &(x, mult)) in parts.iter().enumerate() {
            for p in q.paths_from(x)? {
                per_vertex[p.target].push((k, p, mult));
            }
        }
        Ok(SumLayout::from_lists(per_vertex))
    }

    /// Part `k` contributes one block per path in `Q(w, x_k)`.
    pub fn rho(q: &Quiver, parts: &[(usize, usize)]) -> Result<Self> {
        let n = q.vertex_count();
        let mut per_vertex: Vec<Vec<(usize, Path, usize)>> = vec![Vec::new(); n];
        for (w, slot) in per_vertex.iter_mut().enumerate() {
            let from_w = q.paths_from(w)?;
            for (k, &(x, mult)) in parts.iter().enumerate() {
                slot.extend(from_w.iter().filter(|p| p.target == x).map(|p| (k, p.clone(), mult)));
            }
        }
        Ok(SumLayout::from_lists(per_vertex))
    }

    fn from_lists(per_vertex: Vec<Vec<(usize, Path, usize)>>) -> Self {
        let mut blocks = Vec::with_capacity(per_vertex.len());
        let mut index = Vec::with_capacity(per_vertex.len());
        let mut dims = Vec::with_capacity(per_vertex.len());
        for list in per_vertex {
            let mut offset = 0;
            let mut bs = Vec::with_capacity(list.len());
            let mut idx = HashMap::with_capacity(list.len());
            for (part, path, width) in list {
                idx.insert((part, path.arrows.clone()), bs.len());
                bs.push(Block {
                    part,
                    path,
                    offset,
                    width,
                });
                offset += width;
            }
            blocks.push(bs);
            index.push(idx);
            dims.push(offset);
        }
        SumLayout { blocks, index, dims }
    }

    pub fn find(&self, w: usize, part: usize, path: &Path) -> Option<&Block> {
        self.index[w]
            .get(&(part, path.arrows.clone()))
            .map(|&i| &self.blocks[w][i])
    }
}
