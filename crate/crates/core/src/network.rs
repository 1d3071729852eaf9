//! Layered networks of k-ary comparators.
//!
//! A network on `n` cells is a list of layers; each layer partitions the
//! cell positions into comparators. A comparator reads its cells from the
//! previous array, sorts the values, and writes them back in increasing
//! position order. Positions are 0-based in the API and 1-based in text.

use crate::error::{Error, Result};

/// A set of cell positions sorted together. Members are ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Comparator {
    members: Vec<usize>,
}

impl Comparator {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn arity(&self) -> usize {
        self.members.len()
    }

    pub fn min(&self) -> usize {
        self.members[0]
    }

    pub fn max(&self) -> usize {
        self.members[self.members.len() - 1]
    }

    /// True when the members form a contiguous run of positions.
    fn is_contiguous(&self) -> bool {
        self.max() - self.min() + 1 == self.members.len()
    }
}

/// One layer: a partition of `{0..n}` into comparators, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Layer {
    comparators: Vec<Comparator>,
    owner: Vec<usize>,
}

impl Layer {
    fn new(n: usize, layer_no: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        let mut comparators = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::Partition {
                    layer: layer_no,
                    index: 0,
                    message: "(empty comparator)".into(),
                });
            }
            block.sort_unstable();
            for &cell in &block {
                if cell >= n {
                    return Err(Error::Partition {
                        layer: layer_no,
                        index: cell + 1,
                        message: format!("is out of range 1..={n}"),
                    });
                }
                if owner[cell] != usize::MAX {
                    return Err(Error::Partition {
                        layer: layer_no,
                        index: cell + 1,
                        message: "appears more than once".into(),
                    });
                }
                owner[cell] = 0;
            }
            comparators.push(Comparator { members: block });
        }
        if let Some(missing) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::Partition {
                layer: layer_no,
                index: missing + 1,
                message: "is missing".into(),
            });
        }
        comparators.sort_unstable_by_key(Comparator::min);
        for (ci, comp) in comparators.iter().enumerate() {
            for &cell in &comp.members {
                owner[cell] = ci;
            }
        }
        Ok(Layer { comparators, owner })
    }

    pub fn comparators(&self) -> &[Comparator] {
        &self.comparators
    }

    /// Index of the comparator containing `cell`.
    pub fn owner(&self, cell: usize) -> usize {
        self.owner[cell]
    }

    pub fn arity(&self) -> usize {
        self.comparators.iter().map(Comparator::arity).max().unwrap_or(0)
    }

    /// Blocks as plain vectors, in canonical order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.comparators.iter().map(|c| c.members.clone()).collect()
    }

    fn apply<T: Ord + Copy>(&self, values: &mut [T], scratch: &mut Vec<T>) {
        for comp in &self.comparators {
            if comp.arity() < 2 {
                continue;
            }
            if comp.is_contiguous() {
                values[comp.min()..=comp.max()].sort_unstable();
                continue;
            }
            scratch.clear();
            scratch.extend(comp.members.iter().map(|&i| values[i]));
            scratch.sort_unstable();
            for (&i, &v) in comp.members.iter().zip(scratch.iter()) {
                values[i] = v;
            }
        }
    }

    /// Boolean layer: a comparator with `z` zero inputs writes 0 to its `z`
    /// lowest positions and 1 elsewhere.
    pub fn apply_bool(&self, values: &mut [bool]) {
        for comp in &self.comparators {
            if comp.arity() < 2 {
                continue;
            }
            if comp.is_contiguous() {
                let run = &mut values[comp.min()..=comp.max()];
                let zeros = run.iter().filter(|&&v| !v).count();
                run[..zeros].fill(false);
                run[zeros..].fill(true);
                continue;
            }
            let zeros = comp.members.iter().filter(|&&i| !values[i]).count();
            for (rank, &i) in comp.members.iter().enumerate() {
                values[i] = rank >= zeros;
            }
        }
    }
}

/// A depth-`d` network on `n` cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Network {
    n: usize,
    layers: Vec<Layer>,
}

/// Size statistics of a network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    pub n: usize,
    pub depth: usize,
    pub arity: usize,
    pub per_layer_arities: Vec<usize>,
}

/// All `d + 1` arrays of one evaluation; `arrays[0]` is the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace<T> {
    pub arrays: Vec<Vec<T>>,
}

impl<T> Trace<T> {
    pub fn output(&self) -> &[T] {
        self.arrays.last().expect("trace has at least the input array")
    }
}

impl Network {
    /// Builds a network from 0-based comparator blocks, validating that every
    /// layer is a partition and canonicalizing comparator order.
    pub fn new(n: usize, layers: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a network needs at least one cell".into()));
        }
        if layers.is_empty() {
            return Err(Error::Domain("a network needs at least one layer".into()));
        }
        let layers = layers
            .into_iter()
            .enumerate()
            .map(|(a, blocks)| Layer::new(n, a + 1, blocks))
            .collect::<Result<Vec<_>>>()?;
        Ok(Network { n, layers })
    }

    /// Same as [`Network::new`] but with 1-based members.
    pub fn from_one_based(n: usize, layers: &[Vec<Vec<usize>>]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(layers.len());
        for (a, blocks) in layers.iter().enumerate() {
            let mut out = Vec::with_capacity(blocks.len());
            for block in blocks {
                let mut b = Vec::with_capacity(block.len());
                for &i in block {
                    if i == 0 {
                        return Err(Error::Partition {
                            layer: a + 1,
                            index: 0,
                            message: "is out of range (members are 1-based)".into(),
                        });
                    }
                    b.push(i - 1);
                }
                out.push(b);
            }
            zero_based.push(out);
        }
        Network::new(n, zero_based)
    }

    /// A single layer of singleton comparators.
    pub fn identity(n: usize) -> Result<Self> {
        Network::new(n, vec![(0..n).map(|i| vec![i]).collect()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer(&self, a: usize) -> &Layer {
        &self.layers[a]
    }

    pub fn arity(&self) -> usize {
        self.layers.iter().map(Layer::arity).max().unwrap_or(0)
    }

    pub fn stats(&self) -> Stats {
        Stats {
            n: self.n,
            depth: self.depth(),
            arity: self.arity(),
            per_layer_arities: self.layers.iter().map(Layer::arity).collect(),
        }
    }

    /// Replaces layer `a` (0-based) with new blocks.
    pub fn with_layer(&self, a: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut layers: Vec<Vec<Vec<usize>>> = self.layers.iter().map(Layer::blocks).collect();
        layers[a] = blocks;
        Network::new(self.n, layers)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::InputShape { expected: self.n, actual: len });
        }
        Ok(())
    }

    pub fn evaluate(&self, input: &[i64]) -> Result<Vec<i64>> {
        self.check_len(input.len())?;
        let mut values = input.to_vec();
        let mut scratch = Vec::new();
        for layer in &self.layers {
            layer.apply(&mut values, &mut scratch);
        }
        Ok(values)
    }

    pub fn trace(&self, input: &[i64]) -> Result<Trace<i64>> {
        self.check_len(input.len())?;
        let mut arrays = Vec::with_capacity(self.depth() + 1);
        arrays.push(input.to_vec());
        let mut scratch = Vec::new();
        for layer in &self.layers {
            let mut next = arrays.last().unwrap().clone();
            layer.apply(&mut next, &mut scratch);
            arrays.push(next);
        }
        Ok(Trace { arrays })
    }

    pub fn evaluate_bool(&self, input: &[bool]) -> Result<Vec<bool>> {
        self.check_len(input.len())?;
        let mut values = input.to_vec();
        for layer in &self.layers {
            layer.apply_bool(&mut values);
        }
        Ok(values)
    }

    pub fn trace_bool(&self, input: &[bool]) -> Result<Trace<bool>> {
        self.check_len(input.len())?;
        let mut arrays = Vec::with_capacity(self.depth() + 1);
        arrays.push(input.to_vec());
        for layer in &self.layers {
            let mut next = arrays.last().unwrap().clone();
            layer.apply_bool(&mut next);
            arrays.push(next);
        }
        Ok(Trace { arrays })
    }
}

pub fn is_sorted<T: Ord>(values: &[T]) -> bool {
    values.windows(2).all(|w| w[0] <= w[1])
}

/// Parses a 0/1 string such as `"0110"` into a Boolean input.
pub fn parse_bits(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Syntax {
                line: 1,
                column: i + 1,
                message: format!("expected 0 or 1, found {other:?}"),
            }),
        })
        .collect()
}

pub fn format_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
