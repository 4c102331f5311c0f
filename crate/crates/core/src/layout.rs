//! Parity layouts: qubit placement, parity constraints, logical lines and the code-space map.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::{label_parity, label_parity_mask, BasisState, QubitLabel};

/// Integer grid coordinate `(x, y)`.
pub type Pos = (i64, i64);

pub fn manhattan(a: Pos, b: Pos) -> i64 {
    (a.0 - b.0).abs() + (a.1 - b.1).abs()
}

/// Side or corner neighbours inside one unit plaquette.
pub fn plaquette_neighbors(a: Pos, b: Pos) -> bool {
    a != b && (a.0 - b.0).abs() <= 1 && (a.1 - b.1).abs() <= 1
}

/// A 3- or 4-body Z-type stabilizer over physical qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub members: Vec<QubitLabel>,
}

impl Constraint {
    pub fn new(members: Vec<QubitLabel>) -> Self {
        Constraint { members }
    }

    /// Logical indices that occur an odd number of times among the members.
    pub fn odd_indices(&self) -> Vec<usize> {
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for m in &self.members {
            for &i in m.indices() {
                *count.entry(i).or_default() += 1;
            }
        }
        count.into_iter().filter(|(_, c)| c % 2 == 1).map(|(i, _)| i).collect()
    }
}

/// Physical qubits on a grid with their parity constraints and logical lines.
#[derive(Clone, Debug, PartialEq)]
pub struct ParityLayout {
    pub n_logical: usize,
    pub qubits: Vec<QubitLabel>,
    pub positions: Vec<Pos>,
    pub constraints: Vec<Constraint>,
    pub lines: Vec<Vec<QubitLabel>>,
    index: HashMap<QubitLabel, usize>,
}

/// One failed layout invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation(pub String);

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl ParityLayout {
    /// Assembles a layout without checking it; see [`validate_layout`].
    pub fn new(
        n_logical: usize,
        qubits: Vec<QubitLabel>,
        positions: Vec<Pos>,
        constraints: Vec<Constraint>,
        lines: Vec<Vec<QubitLabel>>,
    ) -> Self {
        let index = qubits.iter().enumerate().map(|(k, q)| (q.clone(), k)).collect();
        ParityLayout { n_logical, qubits, positions, constraints, lines, index }
    }

    /// Number of physical qubits.
    pub fn k(&self) -> usize {
        self.qubits.len()
    }

    pub fn index_of(&self, q: &QubitLabel) -> Option<usize> {
        self.index.get(q).copied()
    }

    pub fn require(&self, q: &QubitLabel) -> Result<usize> {
        self.index_of(q).ok_or_else(|| Error::MissingQubit(q.clone()))
    }

    pub fn contains(&self, q: &QubitLabel) -> bool {
        self.index.contains_key(q)
    }

    pub fn position(&self, q: &QubitLabel) -> Option<Pos> {
        self.index_of(q).map(|k| self.positions[k])
    }

    pub fn line(&self, i: usize) -> &[QubitLabel] {
        &self.lines[i]
    }

    /// Whether two register positions may host a CNOT (side neighbours).
    pub fn cnot_adjacent(&self, a: usize, b: usize) -> bool {
        manhattan(self.positions[a], self.positions[b]) == 1
    }

    /// Whether two register positions may host a physical CP (side or corner neighbours).
    pub fn cp_adjacent(&self, a: usize, b: usize) -> bool {
        plaquette_neighbors(self.positions[a], self.positions[b])
    }

    /// Physical basis index (bit `k` = register qubit `k`) encoding a logical bitmask.
    pub fn encode_mask(&self, logical: u64) -> u64 {
        self.qubits.iter().enumerate().fold(0u64, |acc, (k, q)| {
            acc | ((label_parity_mask(q, logical) as u64) << k)
        })
    }

    /// Constraints as physical bitmasks over the register.
    pub fn constraint_masks(&self) -> Vec<u64> {
        self.constraints
            .iter()
            .map(|c| {
                c.members
                    .iter()
                    .filter_map(|m| self.index_of(m))
                    .fold(0u64, |acc, k| acc | (1u64 << k))
            })
            .collect()
    }

    /// Number of constraints missing for the code space to have dimension `2^n_logical`.
    pub fn constraint_rank_deficit(&self) -> usize {
        let masks: Vec<Vec<u64>> = self
            .constraints
            .iter()
            .map(|c| bitset(c.members.iter().filter_map(|m| self.index_of(m)), self.k()))
            .collect();
        let rank = gf2_rank(masks);
        (self.k() - self.n_logical).saturating_sub(rank)
    }

    /// Serializes to the layout JSON format.
    pub fn to_json(&self) -> String {
        let refs = |v: &[QubitLabel]| -> Vec<usize> {
            v.iter().map(|q| self.index_of(q).expect("member in layout")).collect()
        };
        let raw = RawLayout {
            n: self.n_logical,
            qubits: self.qubits.iter().map(|q| q.indices().to_vec()).collect(),
            positions: self.positions.iter().map(|p| [p.0, p.1]).collect(),
            constraints: self.constraints.iter().map(|c| refs(&c.members)).collect(),
            lines: self.lines.iter().map(|l| refs(l)).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("layout serializes")
    }

    pub fn from_json(text: &str) -> Result<ParityLayout> {
        let raw: RawLayout = serde_json::from_str(text)?;
        let qubits = raw
            .qubits
            .into_iter()
            .map(QubitLabel::new)
            .collect::<Result<Vec<_>>>()?;
        if raw.positions.len() != qubits.len() {
            return Err(Error::Format(format!(
                "{} positions for {} qubits",
                raw.positions.len(),
                qubits.len()
            )));
        }
        let lookup = |r: usize| {
            qubits
                .get(r)
                .cloned()
                .ok_or_else(|| Error::Format(format!("qubit reference {r} out of range")))
        };
        let constraints = raw
            .constraints
            .into_iter()
            .map(|c| c.into_iter().map(lookup).collect::<Result<Vec<_>>>().map(Constraint::new))
            .collect::<Result<Vec<_>>>()?;
        let lines = raw
            .lines
            .into_iter()
            .map(|l| l.into_iter().map(lookup).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let positions = raw.positions.into_iter().map(|p| (p[0], p[1])).collect();
        Ok(ParityLayout::new(raw.n, qubits, positions, constraints, lines))
    }

    /// ASCII grid: one cell per position, `.` for empty sites.
    pub fn render_ascii(&self) -> String {
        if self.qubits.is_empty() {
            return String::new();
        }
        let xs = self.positions.iter().map(|p| p.0);
        let ys = self.positions.iter().map(|p| p.1);
        let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
        let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
        let at: HashMap<Pos, String> = self
            .positions
            .iter()
            .zip(&self.qubits)
            .map(|(&p, q)| {
                let s: Vec<String> = q.indices().iter().map(|i| i.to_string()).collect();
                (p, s.join(","))
            })
            .collect();
        let width = at.values().map(|s| s.len()).max().unwrap_or(1).max(1) + 2;
        let mut out = String::new();
        for y in y0..=y1 {
            for x in x0..=x1 {
                let cell = at.get(&(x, y)).map(|s| format!("[{s}]")).unwrap_or_else(|| ".".into());
                let _ = write!(out, "{cell:^width$}");
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct RawLayout {
    n: usize,
    qubits: Vec<Vec<usize>>,
    positions: Vec<[i64; 2]>,
    constraints: Vec<Vec<usize>>,
    lines: Vec<Vec<usize>>,
}

fn bitset(items: impl Iterator<Item = usize>, len: usize) -> Vec<u64> {
    let mut v = vec![0u64; len.div_ceil(64).max(1)];
    for k in items {
        v[k / 64] ^= 1 << (k % 64);
    }
    v
}

/// Rank over GF(2) of bit vectors stored as `u64` words.
pub(crate) fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let words = rows.first().map_or(0, Vec::len);
    for bit in (0..words * 64).rev() {
        let (w, b) = (bit / 64, bit % 64);
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] >> b & 1 == 1 {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    rank
}

/// Maps a logical basis state to the physical basis state of the layout.
pub fn code_basis_image(
    layout: &ParityLayout,
    logical_bits: &BasisState<usize>,
) -> Result<BasisState<QubitLabel>> {
    if let Some(i) = (0..layout.n_logical).find(|i| !logical_bits.contains_key(i)) {
        return Err(Error::MissingIndex(i));
    }
    layout
        .qubits
        .iter()
        .map(|q| label_parity(q, logical_bits).map(|b| (q.clone(), b)))
        .collect()
}

/// True iff the members of `c` carry an even number of 1-bits.
pub fn constraint_satisfied(state: &BasisState<QubitLabel>, c: &Constraint) -> Result<bool> {
    let mut parity = 0u8;
    for m in &c.members {
        parity ^= state.get(m).ok_or_else(|| Error::MissingQubit(m.clone()))? & 1;
    }
    Ok(parity == 0)
}

/// Lists every violated layout invariant; an empty list means the layout is well formed.
pub fn validate_layout(layout: &ParityLayout) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut bad = |s: String| out.push(Violation(s));
    let n = layout.n_logical;

    let mut seen = BTreeSet::new();
    for q in &layout.qubits {
        if !seen.insert(q.clone()) {
            if q.is_data() {
                bad(format!("duplicate data qubit {}", q.indices()[0]));
            } else {
                bad(format!("duplicate qubit {q}"));
            }
        }
        if let Some(&i) = q.indices().iter().find(|&&i| i >= n) {
            bad(format!("qubit {q} names logical index {i} but the layout has {n} logical qubits"));
        }
    }
    for i in 0..n {
        if !layout.qubits.contains(&QubitLabel::data(i)) {
            bad(format!("missing data qubit {i}"));
        }
    }

    if layout.positions.len() != layout.qubits.len() {
        bad(format!(
            "{} positions for {} qubits",
            layout.positions.len(),
            layout.qubits.len()
        ));
    } else {
        let mut at: HashMap<Pos, &QubitLabel> = HashMap::new();
        for (q, &p) in layout.qubits.iter().zip(&layout.positions) {
            if let Some(other) = at.insert(p, q) {
                bad(format!("qubits {other} and {q} share position {p:?}"));
            }
        }
    }
    let pos_ok = layout.positions.len() == layout.qubits.len();

    if layout.lines.len() != n {
        bad(format!("{} logical lines for {n} logical qubits", layout.lines.len()));
    }
    for (i, line) in layout.lines.iter().enumerate() {
        let want: BTreeSet<&QubitLabel> = layout.qubits.iter().filter(|q| q.contains(i)).collect();
        let have: BTreeSet<&QubitLabel> = line.iter().collect();
        if have.len() != line.len() {
            bad(format!("line {i} lists a qubit twice"));
        }
        for q in want.difference(&have) {
            bad(format!("line {i} misses qubit {q}"));
        }
        for q in have.difference(&want) {
            bad(format!("line {i} contains qubit {q} whose label lacks {i}"));
        }
        if pos_ok {
            for w in line.windows(2) {
                if let (Some(a), Some(b)) = (layout.position(&w[0]), layout.position(&w[1])) {
                    if manhattan(a, b) != 1 {
                        bad(format!("line {i} is not contiguous between {} and {}", w[0], w[1]));
                    }
                }
            }
        }
    }

    for (k, c) in layout.constraints.iter().enumerate() {
        if !(3..=4).contains(&c.members.len()) {
            bad(format!("constraint {k} has {} members (3 or 4 required)", c.members.len()));
        }
        let distinct: BTreeSet<&QubitLabel> = c.members.iter().collect();
        if distinct.len() != c.members.len() {
            bad(format!("constraint {k} repeats a member"));
        }
        for m in &c.members {
            if !layout.contains(m) {
                bad(format!("constraint {k} member {m} is not a layout qubit"));
            }
        }
        for i in c.odd_indices() {
            bad(format!(
                "constraint {k}: index {i} occurs an odd number of times; \
                 every index must occur an even number of times"
            ));
        }
        if pos_ok {
            let ps: Vec<Pos> = c.members.iter().filter_map(|m| layout.position(m)).collect();
            if ps.len() == c.members.len() {
                let span = |f: fn(&Pos) -> i64| {
                    ps.iter().map(f).max().unwrap_or(0) - ps.iter().map(f).min().unwrap_or(0)
                };
                if span(|p| p.0) > 1 || span(|p| p.1) > 1 {
                    bad(format!("constraint {k} does not fit in one unit plaquette"));
                }
            }
        }
    }
    out
}

/// Picks an independent set of plaquette-local constraints, preferring four-body ones.
///
/// Used for layouts whose geometry is known but whose constraints are not listed explicitly.
pub fn local_constraints(qubits: &[QubitLabel], positions: &[Pos]) -> Vec<Constraint> {
    let at: HashMap<Pos, usize> = positions.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut corners: Vec<Pos> = positions
        .iter()
        .flat_map(|&(x, y)| [(x, y), (x - 1, y), (x, y - 1), (x - 1, y - 1)])
        .collect();
    corners.sort_by_key(|&(x, y)| (y, x));
    corners.dedup();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for &(x, y) in &corners {
        let members: Vec<usize> = [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)]
            .iter()
            .filter_map(|p| at.get(p).copied())
            .collect();
        for size in [4, 3] {
            for sub in subsets(&members, size) {
                let c = Constraint::new(sub.iter().map(|&k| qubits[k].clone()).collect());
                if c.odd_indices().is_empty() {
                    candidates.push(sub);
                }
            }
        }
    }
    candidates.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut chosen: Vec<Vec<u64>> = Vec::new();
    let mut out = Vec::new();
    for c in candidates {
        let row = bitset(c.iter().copied(), qubits.len());
        let mut trial = chosen.clone();
        trial.push(row.clone());
        if gf2_rank(trial) > chosen.len() {
            chosen.push(row);
            out.push(Constraint::new(c.iter().map(|&k| qubits[k].clone()).collect()));
        }
    }
    out
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    if items.len() < size {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(&items[1..], size - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    with.extend(subsets(&items[1..], size));
    with
}

/// Orders `members` into a grid path (consecutive members side-adjacent), if one exists.
pub fn path_order(members: &[QubitLabel], pos: &dyn Fn(&QubitLabel) -> Pos) -> Option<Vec<QubitLabel>> {
    if members.len() <= 1 {
        return Some(members.to_vec());
    }
    let ps: Vec<Pos> = members.iter().map(pos).collect();
    let adj: Vec<Vec<usize>> = (0..ps.len())
        .map(|k| (0..ps.len()).filter(|&j| manhattan(ps[k], ps[j]) == 1).collect())
        .collect();
    fn extend(adj: &[Vec<usize>], order: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if order.len() == adj.len() {
            return true;
        }
        let last = *order.last().unwrap();
        for &j in &adj[last] {
            if !used[j] {
                used[j] = true;
                order.push(j);
                if extend(adj, order, used) {
                    return true;
                }
                order.pop();
                used[j] = false;
            }
        }
        false
    }
    // Endpoints of degree one first: any Hamiltonian path must start at one of them.
    let mut starts: Vec<usize> = (0..ps.len()).collect();
    starts.sort_by_key(|&k| adj[k].len());
    let order = starts.into_iter().find_map(|start| {
        let mut order = vec![start];
        let mut used = vec![false; ps.len()];
        used[start] = true;
        extend(&adj, &mut order, &mut used).then_some(order)
    })?;
    Some(order.into_iter().map(|k| members[k].clone()).collect())
}
