//! Optimal-arity constructions for depth 3 and depth 4, and the projection
//! that removes padded cells carrying a virtual +∞.

use crate::error::{Error, Result};
use crate::network::Network;

/// The 8-cell, depth-3, arity-4 reference network.
pub fn figure1() -> Network {
    Network::from_one_based(
        8,
        &[
            vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8]],
            vec![vec![1, 2, 5, 6], vec![3, 4, 7, 8]],
            vec![vec![1, 2, 7, 8], vec![3, 4, 5, 6]],
        ],
    )
    .expect("reference network is a valid partition")
}

/// Depth-3 network of arity `⌈n/2⌉`.
///
/// Cells are read as a two-row table where entry `(i, j)` (column `i`, row
/// `j`, both 1-based) sits at position `2(i-1)+j`. Layer 1 sorts the rows,
/// layer 2 sorts the two checkerboard classes `i+j` even / odd, layer 3
/// sorts the columns. Odd `n` is built for `n+1` with the last cell projected
/// out as a virtual maximum.
pub fn build_depth3(n: usize) -> Result<Network> {
    if n < 2 {
        return Err(Error::Domain(format!("depth-3 construction needs n >= 2, got {n}")));
    }
    if n % 2 == 1 {
        let padded = build_depth3(n + 1)?;
        return project_virtual_max(&padded, &[n]);
    }
    let cols = n / 2;
    // 0-based position of table entry (i, j), i in 0..cols, j in 0..2.
    let cell = |i: usize, j: usize| 2 * i + j;
    let rows: Vec<Vec<usize>> = (0..2).map(|j| (0..cols).map(|i| cell(i, j)).collect()).collect();
    let checker: Vec<Vec<usize>> = (0..2)
        .map(|parity| {
            (0..cols)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .filter(|&(i, j)| (i + j) % 2 == parity)
                .map(|(i, j)| cell(i, j))
                .collect()
        })
        .filter(|block: &Vec<usize>| !block.is_empty())
        .collect();
    let columns: Vec<Vec<usize>> = (0..cols).map(|i| vec![cell(i, 0), cell(i, 1)]).collect();
    Network::new(n, vec![rows, checker, columns])
}

/// Matrix shape of the depth-4 construction: `rows × cols` cells in
/// column-major order, of which the last `pad` are virtual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnSortShape {
    pub rows: usize,
    pub cols: usize,
    pub pad: usize,
}

impl ColumnSortShape {
    pub fn cells(&self) -> usize {
        self.rows * self.cols
    }
}

/// Largest `s` with `2(s-1)^2 <= ⌈n/s⌉`, and `r = max(⌈n/s⌉, 2(s-1)^2)`.
pub fn columnsort_shape(n: usize) -> Result<ColumnSortShape> {
    if n < 4 {
        return Err(Error::Domain(format!("depth-4 construction needs n >= 4, got {n}")));
    }
    let fits = |s: usize| 2 * (s - 1) * (s - 1) <= n.div_ceil(s);
    let mut cols = 1;
    while fits(cols + 1) {
        cols += 1;
    }
    let rows = n.div_ceil(cols).max(2 * (cols - 1) * (cols - 1));
    Ok(ColumnSortShape { rows, cols, pad: rows * cols - n })
}

/// Depth-4 network of arity at most `r = Θ(n^{2/3})`, from the four
/// column-sorting rounds of ColumnSort.
pub fn build_columnsort4(n: usize) -> Result<Network> {
    build_columnsort4_with_shape(n, columnsort_shape(n)?)
}

/// Builds the depth-4 network for an explicit shape; `shape.cells() - n`
/// must equal `shape.pad`.
pub fn build_columnsort4_with_shape(n: usize, shape: ColumnSortShape) -> Result<Network> {
    let ColumnSortShape { rows: r, cols: s, pad } = shape;
    if r == 0 || s == 0 || r * s != n + pad || pad >= r * s {
        return Err(Error::Domain(format!("shape {r}x{s} with pad {pad} does not fit n = {n}")));
    }
    let total = r * s;
    let singletons = || (0..total).map(|p| vec![p]).collect::<Vec<_>>();
    let columns: Vec<Vec<usize>> = (0..s).map(|j| (j * r..(j + 1) * r).collect()).collect();
    let layers = if s == 1 {
        vec![columns, singletons(), singletons(), singletons()]
    } else {
        // Transposing (column-major read, row-major write) gathers the cells
        // congruent mod s into one column; sorting them in place leaves the
        // transposed matrix laid out so that untransposing is the identity.
        let transposed: Vec<Vec<usize>> = (0..s).map(|j| (j..total).step_by(s).collect()).collect();
        let half = r / 2;
        let mut shifted = Vec::new();
        let mut start = 0;
        let mut end = half;
        while start < total {
            let stop = end.min(total);
            if stop > start {
                shifted.push((start..stop).collect());
            }
            start = stop;
            end = stop + r;
        }
        vec![columns.clone(), transposed, columns, shifted]
    };
    let padded = Network::new(total, layers)?;
    let virtual_cells: Vec<usize> = (n..total).collect();
    project_virtual_max(&padded, &virtual_cells)
}

/// Per-array marks of the cells holding the virtual maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualMask {
    pub arrays: Vec<Vec<bool>>,
}

/// Propagates virtual +∞ inputs through the network. A comparator receiving
/// `v` virtual values emits them in its `v` highest positions, whatever the
/// real inputs are.
pub fn virtual_mask(network: &Network, virtual_inputs: &[usize]) -> Result<VirtualMask> {
    let n = network.n();
    let mut first = vec![false; n];
    for &v in virtual_inputs {
        if v >= n {
            return Err(Error::Domain(format!("virtual input {} out of range", v + 1)));
        }
        if first[v] {
            return Err(Error::Domain(format!("virtual input {} listed twice", v + 1)));
        }
        first[v] = true;
    }
    let mut arrays = vec![first];
    for layer in network.layers() {
        let prev = arrays.last().unwrap();
        let mut next = vec![false; n];
        for comp in layer.comparators() {
            let marked = comp.members().iter().filter(|&&i| prev[i]).count();
            for &i in &comp.members()[comp.arity() - marked..] {
                next[i] = true;
            }
        }
        arrays.push(next);
    }
    Ok(VirtualMask { arrays })
}

/// Removes cells carrying a virtual +∞ and renumbers the rest in order.
///
/// The virtual cells must finish in the highest output positions, and every
/// comparator must keep the same renumbered cells on its input and output
/// side; otherwise the result would need wire crossings the model lacks.
pub fn project_virtual_max(network: &Network, virtual_inputs: &[usize]) -> Result<Network> {
    if virtual_inputs.is_empty() {
        return Ok(network.clone());
    }
    let n = network.n();
    let mask = virtual_mask(network, virtual_inputs)?;
    let k = virtual_inputs.len();
    if k >= n {
        return Err(Error::ProjectionInvalid("every cell would be virtual".into()));
    }
    let last = mask.arrays.last().unwrap();
    if let Some(bad) = (0..n).find(|&i| last[i] != (i >= n - k)) {
        return Err(Error::ProjectionInvalid(format!(
            "virtual cells do not finish in the top {k} output positions (position {} disagrees)",
            bad + 1
        )));
    }
    let ranks: Vec<Vec<usize>> = mask
        .arrays
        .iter()
        .map(|marks| {
            let mut next = 0;
            marks
                .iter()
                .map(|&m| {
                    let r = next;
                    if !m {
                        next += 1;
                    }
                    if m { usize::MAX } else { r }
                })
                .collect()
        })
        .collect();
    let mut layers = Vec::with_capacity(network.depth());
    for (a, layer) in network.layers().iter().enumerate() {
        let (before, after) = (&ranks[a], &ranks[a + 1]);
        let mut blocks = Vec::new();
        for comp in layer.comparators() {
            let ins: Vec<usize> = comp.members().iter().map(|&i| before[i]).filter(|&r| r != usize::MAX).collect();
            let outs: Vec<usize> = comp.members().iter().map(|&i| after[i]).filter(|&r| r != usize::MAX).collect();
            if ins != outs {
                return Err(Error::ProjectionInvalid(format!(
                    "layer {} comparator at {} moves real cells across the virtual ones",
                    a + 1,
                    comp.min() + 1
                )));
            }
            if !outs.is_empty() {
                blocks.push(outs);
            }
        }
        layers.push(blocks);
    }
    Network::new(n - k, layers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks_one_based(net: &Network, a: usize) -> Vec<Vec<usize>> {
        net.layer(a)
            .blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|i| i + 1).collect())
            .collect()
    }

    #[test]
    fn depth3_n10_checkerboard_classes() {
        let net = build_depth3(10).unwrap();
        assert_eq!(
            blocks_one_based(&net, 1),
            vec![vec![1, 4, 5, 8, 9], vec![2, 3, 6, 7, 10]]
        );
        assert_eq!(net.stats().per_layer_arities, vec![5, 5, 2]);
    }

    #[test]
    fn depth3_n4_layers() {
        let net = build_depth3(4).unwrap();
        assert_eq!(blocks_one_based(&net, 0), vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(blocks_one_based(&net, 1), vec![vec![1, 4], vec![2, 3]]);
        assert_eq!(blocks_one_based(&net, 2), vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn depth3_small_cases() {
        let two = build_depth3(2).unwrap();
        assert_eq!(two.evaluate(&[1, 0]).unwrap(), vec![0, 1]);
        assert_eq!(two.evaluate(&[0, 1]).unwrap(), vec![0, 1]);
        assert!(build_depth3(1).is_err());
        let five = build_depth3(5).unwrap();
        assert_eq!(five.n(), 5);
        assert_eq!(five.arity(), 3);
    }

    #[test]
    fn shapes() {
        assert_eq!(columnsort_shape(16).unwrap(), ColumnSortShape { rows: 8, cols: 2, pad: 0 });
        assert_eq!(columnsort_shape(4).unwrap(), ColumnSortShape { rows: 2, cols: 2, pad: 0 });
        assert!(columnsort_shape(3).is_err());
    }

    #[test]
    fn shape_matches_literal_maximization() {
        for n in 4..3000usize {
            let shape = columnsort_shape(n).unwrap();
            let best = (1..=n)
                .filter(|&s| 2 * (s - 1) * (s - 1) <= (n + s - 1) / s)
                .max()
                .unwrap();
            assert_eq!(shape.cols, best, "n = {n}");
            assert!(shape.rows * shape.cols >= n);
            assert!(shape.rows >= 2 * (best - 1) * (best - 1));
            assert!(shape.pad < shape.rows * shape.cols);
        }
    }

    #[test]
    fn projection_with_no_virtual_cells_is_identity() {
        let net = build_depth3(6).unwrap();
        assert_eq!(project_virtual_max(&net, &[]).unwrap(), net);
    }

    #[test]
    fn projection_rejects_virtual_cells_that_do_not_reach_the_top() {
        // Identity layer keeps the virtual cell at position 1, not at the top.
        let net = Network::identity(3).unwrap();
        assert!(matches!(
            project_virtual_max(&net, &[0]),
            Err(Error::ProjectionInvalid(_))
        ));
    }

    #[test]
    fn single_column_shape_is_degenerate_but_sorts() {
        let shape = ColumnSortShape { rows: 5, cols: 1, pad: 0 };
        let net = build_columnsort4_with_shape(5, shape).unwrap();
        assert_eq!(net.stats().per_layer_arities, vec![5, 1, 1, 1]);
        assert_eq!(net.evaluate(&[5, 3, 4, 1, 2]).unwrap(), vec![1, 2, 3, 4, 5]);
    }
}
