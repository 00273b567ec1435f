//! Coherent configurations given by a color matrix.
//!
//! A [`Scheme`] is a color matrix that satisfies the partition, diagonal and
//! transpose axioms. Regularity of the intersection numbers is certified
//! separately by [`Scheme::verify_regularity`], and [`Configuration`] bundles
//! a certified scheme with its tensor, relation statistics and flags.
//!
//! Relations are renumbered canonically on construction: diagonal relations
//! first (ordered by their smallest point), then off-diagonal relations in
//! order of first occurrence in a row-major scan. Cell `i` is the point set of
//! diagonal relation `i`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("color matrix is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("color {color} does not occur (colors must cover 0..{rank})")]
    MissingColor { color: usize, rank: usize },
    #[error(
        "relation {color} meets the diagonal at ({p}, {p}) but also contains the off-diagonal pair ({}, {})",
        off.0, off.1
    )]
    DiagonalMixed { color: usize, p: usize, off: (usize, usize) },
    #[error(
        "transpose of relation {color} is not a relation: ({}, {}) is transposed into color {first} but ({}, {}) into color {second}",
        a.0, a.1, b.0, b.1
    )]
    TransposeSplit { color: usize, a: (usize, usize), first: usize, b: (usize, usize), second: usize },
    #[error(transparent)]
    Regularity(#[from] RegularityError),
}

/// Witness that the midpoint counts of a color matrix are not constant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error(
    "intersection number c[{r}][{s}][{t}] is not well defined: pair ({}, {}) has {first_count} midpoints, pair ({}, {}) has {second_count}",
    first.0, first.1, second.0, second.1
)]
pub struct RegularityError {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub first: (usize, usize),
    pub first_count: u32,
    pub second: (usize, usize),
    pub second_count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheme {
    size: usize,
    rank: usize,
    colors: Vec<usize>,
    transpose_of: Vec<usize>,
    diagonal: Vec<bool>,
    cells: Vec<Vec<usize>>,
    cell_of_point: Vec<usize>,
    /// `None` when the relation straddles several products of cells; this can
    /// only happen before regularity is certified.
    fiber_of: Vec<Option<(usize, usize)>>,
    sizes: Vec<usize>,
}

impl Scheme {
    /// Validates the partition, diagonal and transpose axioms of a color
    /// matrix and renumbers its relations canonically.
    pub fn from_color_matrix<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, SchemeError> {
        let n = rows.len();
        if n == 0 {
            return Err(SchemeError::Empty);
        }
        let mut input = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(SchemeError::NotSquare { row: i, len: row.len(), expected: n });
            }
            input.extend_from_slice(row);
        }

        let rank = input.iter().max().map_or(0, |&m| m + 1);
        let mut seen = vec![false; rank];
        for &c in &input {
            seen[c] = true;
        }
        if let Some(color) = seen.iter().position(|&s| !s) {
            return Err(SchemeError::MissingColor { color, rank });
        }

        // C2: a color is either entirely on the diagonal or entirely off it.
        let mut diag_point: Vec<Option<usize>> = vec![None; rank];
        let mut off_pair: Vec<Option<(usize, usize)>> = vec![None; rank];
        for u in 0..n {
            for v in 0..n {
                let c = input[u * n + v];
                if u == v {
                    diag_point[c].get_or_insert(u);
                } else {
                    off_pair[c].get_or_insert((u, v));
                }
            }
        }
        for c in 0..rank {
            if let (Some(p), Some(off)) = (diag_point[c], off_pair[c]) {
                return Err(SchemeError::DiagonalMixed { color: c, p, off });
            }
        }

        // C3: the transpose of a color class is a single color class.
        let mut transpose: Vec<Option<(usize, (usize, usize))>> = vec![None; rank];
        for u in 0..n {
            for v in 0..n {
                let c = input[u * n + v];
                let ct = input[v * n + u];
                match transpose[c] {
                    None => transpose[c] = Some((ct, (u, v))),
                    Some((first, a)) if first != ct => {
                        return Err(SchemeError::TransposeSplit {
                            color: c,
                            a,
                            first,
                            b: (u, v),
                            second: ct,
                        });
                    }
                    Some(_) => {}
                }
            }
        }

        // Canonical numbering: diagonal colors by first point, then the rest
        // by first row-major occurrence.
        let mut relabel = vec![usize::MAX; rank];
        let mut next = 0;
        for p in 0..n {
            let c = input[p * n + p];
            if relabel[c] == usize::MAX {
                relabel[c] = next;
                next += 1;
            }
        }
        let num_cells = next;
        for &c in &input {
            if relabel[c] == usize::MAX {
                relabel[c] = next;
                next += 1;
            }
        }
        debug_assert_eq!(next, rank);

        let colors: Vec<usize> = input.iter().map(|&c| relabel[c]).collect();
        let mut transpose_of = vec![0; rank];
        for c in 0..rank {
            let (ct, _) = transpose[c].expect("every color occurs");
            transpose_of[relabel[c]] = relabel[ct];
        }
        debug_assert!((0..rank).all(|c| transpose_of[transpose_of[c]] == c));

        let diagonal: Vec<bool> = (0..rank).map(|c| c < num_cells).collect();
        let mut cells = vec![Vec::new(); num_cells];
        let mut cell_of_point = vec![0; n];
        for p in 0..n {
            let c = colors[p * n + p];
            cells[c].push(p);
            cell_of_point[p] = c;
        }

        let mut sizes = vec![0usize; rank];
        let mut fiber_of: Vec<Option<(usize, usize)>> = vec![None; rank];
        let mut straddles = vec![false; rank];
        for u in 0..n {
            for v in 0..n {
                let c = colors[u * n + v];
                sizes[c] += 1;
                let fiber = (cell_of_point[u], cell_of_point[v]);
                match fiber_of[c] {
                    None => fiber_of[c] = Some(fiber),
                    Some(f) if f != fiber => straddles[c] = true,
                    Some(_) => {}
                }
            }
        }
        for c in 0..rank {
            if straddles[c] {
                fiber_of[c] = None;
            }
        }

        Ok(Scheme { size: n, rank, colors, transpose_of, diagonal, cells, cell_of_point, fiber_of, sizes })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> usize {
        self.colors[u * self.size + v]
    }

    /// Row-major color matrix.
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.colors.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn transpose_of(&self, relation: usize) -> usize {
        self.transpose_of[relation]
    }

    pub fn is_diagonal(&self, relation: usize) -> bool {
        self.diagonal[relation]
    }

    pub fn diagonal_colors(&self) -> impl Iterator<Item = usize> + '_ {
        0..self.cells.len()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_of_point(&self, p: usize) -> usize {
        self.cell_of_point[p]
    }

    pub fn fiber_of(&self, relation: usize) -> Option<(usize, usize)> {
        self.fiber_of[relation]
    }

    /// Number of pairs in a relation.
    pub fn relation_size(&self, relation: usize) -> usize {
        self.sizes[relation]
    }

    /// Relations contained in `X × X` for the cell `X`.
    pub fn relations_in_cell(&self, cell: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&c| self.fiber_of[c] == Some((cell, cell)))
    }

    /// Certifies that the intersection numbers are well defined and returns
    /// them. For each pair the midpoint colors are bucketed, so the cost is
    /// `O(n^2 (n + r^2))`.
    pub fn verify_regularity(&self) -> Result<IntersectionTensor, RegularityError> {
        let n = self.size;
        let r = self.rank;
        let rr = r * r;
        let mut tensor = vec![0u32; rr * r];
        let mut representative: Vec<Option<(usize, usize)>> = vec![None; r];
        let mut counts = vec![0u32; rr];
        let mut touched: Vec<usize> = Vec::with_capacity(n);

        for u in 0..n {
            for w in 0..n {
                let t = self.color(u, w);
                for v in 0..n {
                    let idx = self.color(u, v) * r + self.color(v, w);
                    if counts[idx] == 0 {
                        touched.push(idx);
                    }
                    counts[idx] += 1;
                }
                match representative[t] {
                    None => {
                        representative[t] = Some((u, w));
                        for &idx in &touched {
                            tensor[idx * r + t] = counts[idx];
                        }
                    }
                    Some(first) => {
                        // Compare the full count vector, zeros included.
                        for idx in 0..rr {
                            if tensor[idx * r + t] != counts[idx] {
                                return Err(RegularityError {
                                    r: idx / r,
                                    s: idx % r,
                                    t,
                                    first,
                                    first_count: tensor[idx * r + t],
                                    second: (u, w),
                                    second_count: counts[idx],
                                });
                            }
                        }
                    }
                }
                for idx in touched.drain(..) {
                    counts[idx] = 0;
                }
            }
        }
        Ok(IntersectionTensor::from_dense(r, tensor))
    }

    /// Applies a point permutation (`new point = perm[old point]`) and
    /// renumbers relations canonically.
    pub fn relabel_points(&self, perm: &[usize]) -> Result<Scheme, SchemeError> {
        let n = self.size;
        let mut rows = vec![vec![0; n]; n];
        for u in 0..n {
            for v in 0..n {
                rows[perm[u]][perm[v]] = self.color(u, v);
            }
        }
        Scheme::from_color_matrix(&rows)
    }
}

/// Structure constants `c[R][S][T]`, i.e. the multiplication table of the
/// adjacency algebra in the basis of adjacency matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionTensor {
    rank: usize,
    dense: Vec<u32>,
    nonzero: Vec<Vec<(usize, u32)>>,
}

impl IntersectionTensor {
    pub fn from_dense(rank: usize, dense: Vec<u32>) -> Self {
        assert_eq!(dense.len(), rank * rank * rank);
        let nonzero = dense
            .chunks(rank.max(1))
            .take(rank * rank)
            .map(|row| row.iter().enumerate().filter(|(_, &c)| c != 0).map(|(t, &c)| (t, c)).collect())
            .collect();
        IntersectionTensor { rank, dense, nonzero }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, r: usize, s: usize, t: usize) -> u32 {
        self.dense[(r * self.rank + s) * self.rank + t]
    }

    /// Nonzero `(T, c[R][S][T])` entries of the product `A(R) A(S)`.
    #[inline]
    pub fn product_terms(&self, r: usize, s: usize) -> &[(usize, u32)] {
        &self.nonzero[r * self.rank + s]
    }

    /// Little-endian dump of the dense tensor, used for digests.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        self.dense.iter().flat_map(|c| c.to_le_bytes()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationStat {
    pub size: usize,
    pub d_out: usize,
    pub d_in: usize,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationStats {
    pub relations: Vec<RelationStat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    pub homogeneous: bool,
    pub commutative: bool,
    pub symmetric: bool,
}

impl fmt::Display for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "homogeneous={} commutative={} symmetric={}",
            self.homogeneous, self.commutative, self.symmetric
        )
    }
}

/// A scheme whose regularity has been certified, with its derived data.
#[derive(Debug, Clone)]
pub struct Configuration {
    scheme: Scheme,
    tensor: IntersectionTensor,
    stats: RelationStats,
    flags: Flags,
}

impl Configuration {
    pub fn new(scheme: Scheme) -> Result<Self, SchemeError> {
        let tensor = scheme.verify_regularity()?;
        let stats = stats(&scheme, &tensor);
        let flags = classify(&scheme, &tensor);
        Ok(Configuration { scheme, tensor, stats, flags })
    }

    pub fn from_color_matrix<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, SchemeError> {
        Self::new(Scheme::from_color_matrix(rows)?)
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn tensor(&self) -> &IntersectionTensor {
        &self.tensor
    }

    pub fn stats(&self) -> &RelationStats {
        &self.stats
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn size(&self) -> usize {
        self.scheme.size
    }

    pub fn rank(&self) -> usize {
        self.scheme.rank
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.scheme.cells.iter().map(Vec::len).collect()
    }
}

/// Relation statistics; asserts the valency identities, which hold for every
/// regular scheme.
pub fn stats(scheme: &Scheme, tensor: &IntersectionTensor) -> RelationStats {
    let r = scheme.rank;
    let mut relations = Vec::with_capacity(r);
    for c in 0..r {
        let (source, target) = scheme.fiber_of[c].expect("regular schemes have one fiber per relation");
        let size = scheme.sizes[c];
        let (x, y) = (scheme.cells[source].len(), scheme.cells[target].len());
        assert!(size.is_multiple_of(x) && size.is_multiple_of(y), "relation {c}: |R| not divisible by its cell sizes");
        let (d_out, d_in) = (size / x, size / y);
        // c[R][R^t][Δ(X)] = d_out and c[R^t][R][Δ(Y)] = d_in
        let ct = scheme.transpose_of[c];
        assert_eq!(tensor.get(c, ct, source) as usize, d_out);
        assert_eq!(tensor.get(ct, c, target) as usize, d_in);
        relations.push(RelationStat { size, d_out, d_in, source, target });
    }
    let k = scheme.cells.len();
    for x in 0..k {
        for y in 0..k {
            let fiber = relations.iter().filter(|s| (s.source, s.target) == (x, y));
            let (out, inn) = fiber.fold((0, 0), |(o, i), s| (o + s.d_out, i + s.d_in));
            assert_eq!(out, scheme.cells[y].len(), "sum of d_out over fiber ({x},{y})");
            assert_eq!(inn, scheme.cells[x].len(), "sum of d_in over fiber ({x},{y})");
        }
    }
    RelationStats { relations }
}

pub fn classify(scheme: &Scheme, tensor: &IntersectionTensor) -> Flags {
    let r = scheme.rank;
    let homogeneous = scheme.cells.len() == 1;
    let commutative =
        (0..r).all(|a| (0..r).all(|b| (0..r).all(|t| tensor.get(a, b, t) == tensor.get(b, a, t))));
    let symmetric = (0..r).all(|c| scheme.transpose_of[c] == c);
    assert!(!symmetric || commutative, "symmetric scheme must be commutative");
    assert!(!commutative || homogeneous, "commutative scheme must be homogeneous");
    Flags { homogeneous, commutative, symmetric }
}
