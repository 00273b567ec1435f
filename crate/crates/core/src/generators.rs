//! Constructors for the scheme families used throughout the crate.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::scheme::{Scheme, SchemeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("permutation acts on {found} points, expected {expected}")]
    InconsistentLength { expected: usize, found: usize },
    #[error("image array is not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("cannot parse cycle notation {0:?}")]
    BadCycles(String),
    #[error("table is not a group: {0}")]
    NotAGroup(String),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// A bijection of `0..n`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self, GeneratorError> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || seen[i] {
                return Err(GeneratorError::NotAPermutation(image));
            }
            seen[i] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    /// Parses cycle notation such as `(0 1)(2 3 4)` on `n` points. The empty
    /// string and `()` are the identity.
    pub fn from_cycles(n: usize, text: &str) -> Result<Self, GeneratorError> {
        let bad = || GeneratorError::BadCycles(text.to_string());
        let mut image: Vec<usize> = (0..n).collect();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let points: Vec<usize> = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            if points.iter().any(|&p| p >= n) {
                return Err(bad());
            }
            for (i, &p) in points.iter().enumerate() {
                image[p] = points[(i + 1) % points.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::new(image).map_err(|_| bad())
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.image[point]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `self` after `other`: `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { image: other.image.iter().map(|&i| self.image[i]).collect() }
    }

    /// Cycle notation with fixed points omitted; `()` for the identity.
    pub fn to_cycles(&self) -> String {
        let mut seen = vec![false; self.len()];
        let mut out = String::new();
        for start in 0..self.len() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image[p];
            }
            let body: Vec<String> = cycle.iter().map(usize::to_string).collect();
            out.push('(');
            out.push_str(&body.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycles())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The orbital scheme of the group generated by `generators`: colors are the
/// orbits on ordered pairs, found by union-find over the `n^2` pairs without
/// enumerating the group.
pub fn schurian(generators: &[Permutation], n: usize) -> Result<Scheme, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::Parameters("schurian scheme needs n >= 1".into()));
    }
    for g in generators {
        if g.len() != n {
            return Err(GeneratorError::InconsistentLength { expected: n, found: g.len() });
        }
    }
    let mut uf = UnionFind::new(n * n);
    for g in generators {
        for u in 0..n {
            for v in 0..n {
                uf.union(u * n + v, g.apply(u) * n + g.apply(v));
            }
        }
    }
    let mut label = HashMap::new();
    let mut rows = vec![vec![0; n]; n];
    for u in 0..n {
        for v in 0..n {
            let root = uf.find(u * n + v);
            let next = label.len();
            rows[u][v] = *label.entry(root).or_insert(next);
        }
    }
    Ok(Scheme::from_color_matrix(&rows)?)
}

/// A finite group given by its multiplication table, `table[a][b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl CayleyTable {
    /// Checks closure, identity, inverses and associativity directly.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, GeneratorError> {
        let n = table.len();
        if n == 0 {
            return Err(GeneratorError::NotAGroup("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(GeneratorError::NotAGroup("table is not a closed n x n table".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| GeneratorError::NotAGroup("no identity".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| GeneratorError::NotAGroup(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GeneratorError::NotAGroup(format!("({a}{b}){c} != {a}({b}{c})")));
                    }
                }
            }
        }
        Ok(CayleyTable { table, identity, inverse })
    }

    /// Closes a set of permutations under composition; the identity comes
    /// first and further elements in breadth-first order.
    pub fn from_permutations(generators: &[Permutation], degree: usize) -> Result<Self, GeneratorError> {
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(id, 0)]);
        let mut frontier = 0;
        while frontier < elements.len() {
            let x = elements[frontier].clone();
            frontier += 1;
            for g in generators {
                if g.len() != degree {
                    return Err(GeneratorError::InconsistentLength { expected: degree, found: g.len() });
                }
                let y = x.compose(g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let table = elements.iter().map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect()).collect();
        CayleyTable::new(table)
    }

    pub fn cyclic(n: usize) -> Result<Self, GeneratorError> {
        if n == 0 {
            return Err(GeneratorError::Parameters("cyclic group needs n >= 1".into()));
        }
        CayleyTable::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// The symmetric group on `m` letters, of order `m!`.
    pub fn symmetric(m: usize) -> Result<Self, GeneratorError> {
        if m == 0 {
            return Err(GeneratorError::Parameters("symmetric group needs m >= 1".into()));
        }
        let mut gens = Vec::new();
        if m >= 2 {
            gens.push(Permutation::from_cycles(m, "(0 1)")?);
            let cycle: Vec<String> = (0..m).map(|i| i.to_string()).collect();
            gens.push(Permutation::from_cycles(m, &format!("({})", cycle.join(" ")))?);
        }
        CayleyTable::from_permutations(&gens, m)
    }

    /// The dihedral group of order `2m`, the symmetries of an `m`-gon.
    pub fn dihedral(m: usize) -> Result<Self, GeneratorError> {
        if m < 2 {
            return Err(GeneratorError::Parameters("dihedral group needs m >= 2".into()));
        }
        let rotation = Permutation::new((0..m).map(|i| (i + 1) % m).collect())?;
        let reflection = Permutation::new((0..m).map(|i| (m - i) % m).collect())?;
        if m == 2 {
            // as a permutation group on 2 points the rotation and reflection
            // coincide; use the Klein four-group directly
            return CayleyTable::cyclic(2)?.product(&CayleyTable::cyclic(2)?);
        }
        CayleyTable::from_permutations(&[rotation, reflection], m)
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Result<Self, GeneratorError> {
        // unit index 0..4 = 1, i, j, k; element = sign * 4 + unit
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (sa, ua) = (a / 4, a % 4);
                        let (sb, ub) = (b / 4, b % 4);
                        let (s, u) = UNIT[ua][ub];
                        ((sa + sb + s) % 2) * 4 + u
                    })
                    .collect()
            })
            .collect();
        CayleyTable::new(table)
    }

    pub fn product(&self, other: &CayleyTable) -> Result<Self, GeneratorError> {
        let (n, m) = (self.order(), other.order());
        let table = (0..n * m)
            .map(|a| (0..n * m).map(|b| self.table[a / m][b / m] * m + other.table[a % m][b % m]).collect())
            .collect();
        CayleyTable::new(table)
    }

    /// Parses names such as `Z4`, `S3`, `D4`, `Q8`, `A4` and products like
    /// `Z2xZ2xZ2`.
    pub fn by_name(name: &str) -> Result<Self, GeneratorError> {
        let unknown = || GeneratorError::UnknownGroup(name.to_string());
        let mut group: Option<CayleyTable> = None;
        for factor in name.split('x') {
            let (kind, arg) = factor.split_at(factor.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
            let k: usize = arg.parse().map_err(|_| unknown())?;
            let g = match kind {
                "Z" | "C" => CayleyTable::cyclic(k)?,
                "S" => CayleyTable::symmetric(k)?,
                "D" => CayleyTable::dihedral(k)?,
                "Q" if k == 8 => CayleyTable::quaternion()?,
                "A" if k == 4 => CayleyTable::from_permutations(
                    &[Permutation::from_cycles(4, "(0 1 2)")?, Permutation::from_cycles(4, "(0 1)(2 3)")?],
                    4,
                )?,
                _ => return Err(unknown()),
            };
            group = Some(match group {
                None => g,
                Some(h) => h.product(&g)?,
            });
        }
        group.ok_or_else(unknown)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

/// The thin scheme with relations `R_g = {(x, xg)}`.
pub fn thin_group_scheme(group: &CayleyTable) -> Result<Scheme, GeneratorError> {
    let n = group.order();
    let rows: Vec<Vec<usize>> =
        (0..n).map(|x| (0..n).map(|y| group.mul(group.inverse(x), y)).collect()).collect();
    Ok(Scheme::from_color_matrix(&rows)?)
}

/// The scheme with relations `Δ` and `V×V − Δ`; for `n = 1` only `Δ`.
pub fn rank2(n: usize) -> Result<Scheme, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::Parameters("rank2 needs n >= 1".into()));
    }
    let rows: Vec<Vec<usize>> = (0..n).map(|u| (0..n).map(|v| usize::from(u != v)).collect()).collect();
    Ok(Scheme::from_color_matrix(&rows)?)
}

/// Every pair is its own relation; the adjacency algebra is the full matrix
/// algebra.
pub fn discrete(n: usize) -> Result<Scheme, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::Parameters("discrete needs n >= 1".into()));
    }
    let rows: Vec<Vec<usize>> = (0..n).map(|u| (0..n).map(|v| u * n + v).collect()).collect();
    Ok(Scheme::from_color_matrix(&rows)?)
}

/// `q`-ary words of length `d`, colored by Hamming distance.
pub fn hamming(d: usize, q: usize) -> Result<Scheme, GeneratorError> {
    if d == 0 || q < 2 {
        return Err(GeneratorError::Parameters(format!("hamming({d},{q}) needs d >= 1 and q >= 2")));
    }
    let n = q.checked_pow(d as u32).filter(|&n| n <= 4096).ok_or_else(|| {
        GeneratorError::Parameters(format!("hamming({d},{q}) has too many points"))
    })?;
    let digits = |mut x: usize| {
        let mut out = vec![0; d];
        for slot in out.iter_mut() {
            *slot = x % q;
            x /= q;
        }
        out
    };
    let words: Vec<Vec<usize>> = (0..n).map(digits).collect();
    let rows: Vec<Vec<usize>> = words
        .iter()
        .map(|a| words.iter().map(|b| a.iter().zip(b).filter(|(x, y)| x != y).count()).collect())
        .collect();
    Ok(Scheme::from_color_matrix(&rows)?)
}

/// `k`-subsets of a `v`-set, colored by `k − |A ∩ B|`.
pub fn johnson(v: usize, k: usize) -> Result<Scheme, GeneratorError> {
    if !(v > k && k >= 1) || v > 20 {
        return Err(GeneratorError::Parameters(format!("johnson({v},{k}) needs v > k >= 1 and v <= 20")));
    }
    let subsets: Vec<u32> = (0u32..(1 << v)).filter(|s| s.count_ones() as usize == k).collect();
    let rows: Vec<Vec<usize>> = subsets
        .iter()
        .map(|a| subsets.iter().map(|b| k - (a & b).count_ones() as usize).collect())
        .collect();
    Ok(Scheme::from_color_matrix(&rows)?)
}

/// Disjoint union of two schemes. The relations are those of `a`, those of
/// `b`, and one full cross relation `X × Y` (and `Y × X`) for every cell `X`
/// of `a` and cell `Y` of `b`.
pub fn direct_sum(a: &Scheme, b: &Scheme) -> Scheme {
    let (na, nb) = (a.size(), b.size());
    let (ra, rb) = (a.rank(), b.rank());
    let (ka, kb) = (a.num_cells(), b.num_cells());
    let n = na + nb;
    let cross = ra + rb;
    let mut rows = vec![vec![0; n]; n];
    for u in 0..n {
        for v in 0..n {
            rows[u][v] = match (u < na, v < na) {
                (true, true) => a.color(u, v),
                (false, false) => ra + b.color(u - na, v - na),
                (true, false) => cross + a.cell_of_point(u) * kb + b.cell_of_point(v - na),
                (false, true) => cross + ka * kb + b.cell_of_point(u - na) * ka + a.cell_of_point(v),
            };
        }
    }
    Scheme::from_color_matrix(&rows).expect("direct sum of valid schemes satisfies the axioms")
}
