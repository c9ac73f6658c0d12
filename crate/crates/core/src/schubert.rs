//! Quantum Schubert calculus for Grassmannians and the SU(n)
//! Deligne-Simpson existence checker.
//!
//! Small-quantum-cohomology structure constants are computed by the rim-hook
//! rule: classical Littlewood-Richardson expansion in at most `k` rows, then
//! reduction modulo `n`-rim-hooks with signs tracked through beta-numbers.
//! Multi-point invariants come from iterated products. The existence checker
//! enumerates the quantum inequalities indexed by invariant-one tuples and
//! returns a violation certificate when the system is infeasible.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{Rat, SUnClass};
use crate::error::{Error, Result};
use crate::higgs::GradedHiggsModel;
use crate::parabolic::SplitParabolicBundle;

/// A partition: weakly decreasing positive parts (trailing zeros trimmed).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        for pair in parts.windows(2) {
            if pair[0] < pair[1] {
                return Err(Error::Invariant(format!(
                    "partition parts must be weakly decreasing, got {parts:?}"
                )));
            }
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn num_rows(&self) -> usize {
        self.0.len()
    }

    /// Total number of boxes; the codimension of the Schubert class.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// Whether the partition fits in the `k x (n - k)` box.
    pub fn fits_box(&self, k: usize, n: usize) -> bool {
        self.num_rows() <= k && self.part(0) as usize <= n - k
    }

    /// Box complement in `k x (n - k)`, reversed: the Poincare dual class.
    pub fn dual_in_box(&self, k: usize, n: usize) -> Result<Partition> {
        if !self.fits_box(k, n) {
            return Err(Error::Precondition(format!(
                "partition {:?} does not fit in the {k} x {} box",
                self.0,
                n - k
            )));
        }
        let cols = (n - k) as u32;
        Partition::new((0..k).rev().map(|i| cols - self.part(i)).collect())
    }
}

/// A size-`k` subset of `{1, ..., n}` indexing a Schubert class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SchubertSubset(Vec<u32>);

impl SchubertSubset {
    pub fn new(mut elems: Vec<u32>, n: usize) -> Result<SchubertSubset> {
        elems.sort_unstable();
        if elems.is_empty() {
            return Err(Error::Invariant("subset must be nonempty".into()));
        }
        if elems.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::Invariant("subset elements must be distinct".into()));
        }
        if elems[0] < 1 || *elems.last().unwrap() as usize > n {
            return Err(Error::Invariant(format!(
                "subset elements must lie in 1..={n}, got {elems:?}"
            )));
        }
        Ok(SchubertSubset(elems))
    }

    pub fn elems(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The partition of a Schubert subset: `lambda_a = (n - k) + a - i_a`.
pub fn subset_to_partition(subset: &SchubertSubset, k: usize, n: usize) -> Result<Partition> {
    if subset.len() != k {
        return Err(Error::Precondition(format!(
            "subset size {} does not match k = {k}",
            subset.len()
        )));
    }
    let parts = subset
        .elems()
        .iter()
        .enumerate()
        .map(|(a0, &i)| (n - k) as u32 + a0 as u32 + 1 - i)
        .collect();
    Partition::new(parts)
}

/// Inverse of [`subset_to_partition`].
pub fn partition_to_subset(p: &Partition, k: usize, n: usize) -> Result<SchubertSubset> {
    if !p.fits_box(k, n) {
        return Err(Error::Precondition("partition must fit the box".into()));
    }
    let elems = (0..k)
        .map(|a0| (n - k) as u32 + a0 as u32 + 1 - p.part(a0))
        .collect();
    SchubertSubset::new(elems, n)
}

/// Littlewood-Richardson coefficient `c_{lambda mu}^{nu}` by exhaustive
/// enumeration of lattice skew tableaux of shape `nu / lambda` and content
/// `mu`. No box constraint; all partitions with at most `nu.num_rows()` rows
/// are fine.
pub fn lr_coeff(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.size() != lambda.size() + mu.size() {
        return 0;
    }
    // lambda must sit inside nu.
    if (0..nu.num_rows().max(lambda.num_rows())).any(|i| lambda.part(i) > nu.part(i)) {
        return 0;
    }
    if mu.size() == 0 {
        return 1;
    }
    // Cells of the skew shape in the reverse reading order (rows top to
    // bottom, right to left within a row), which lets the lattice condition
    // be maintained incrementally.
    let mut cells: Vec<(usize, u32)> = Vec::new();
    for row in 0..nu.num_rows() {
        for col in (lambda.part(row)..nu.part(row)).rev() {
            cells.push((row, col));
        }
    }
    let mut search = LrSearch {
        cells,
        lambda,
        nu,
        mu,
        content: vec![0u32; mu.num_rows()],
        placed: BTreeMap::new(),
        count: 0,
    };
    search.fill(0);
    search.count
}

struct LrSearch<'a> {
    cells: Vec<(usize, u32)>,
    lambda: &'a Partition,
    nu: &'a Partition,
    mu: &'a Partition,
    content: Vec<u32>,
    /// Entries placed so far, indexed by (row, col).
    placed: BTreeMap<(usize, u32), usize>,
    count: u64,
}

impl LrSearch<'_> {
    fn fill(&mut self, idx: usize) {
        if idx == self.cells.len() {
            self.count += 1;
            return;
        }
        let (row, col) = self.cells[idx];
        // Row constraint: weakly increasing left to right, so this cell must
        // not exceed its right neighbor (already placed).
        let right_cap = self.placed.get(&(row, col + 1)).copied().unwrap_or(usize::MAX);
        // Column constraint: strictly increasing downwards; the cell above
        // (placed, since rows fill top to bottom) bounds from below when it
        // belongs to the skew shape.
        let above_floor =
            if row > 0 && col >= self.lambda.part(row - 1) && col < self.nu.part(row - 1) {
                self.placed[&(row - 1, col)] + 1
            } else {
                0
            };
        for v in above_floor..self.mu.num_rows() {
            if v > right_cap {
                break;
            }
            if self.content[v] >= self.mu.part(v) {
                continue;
            }
            // Lattice condition on the reverse reading word.
            if v > 0 && self.content[v - 1] <= self.content[v] {
                continue;
            }
            self.content[v] += 1;
            self.placed.insert((row, col), v);
            self.fill(idx + 1);
            self.placed.remove(&(row, col));
            self.content[v] -= 1;
        }
    }
}

/// Boxed Littlewood-Richardson coefficient (classical cohomology of the
/// Grassmannian): all three partitions must fit the `k x (n - k)` box.
pub fn lr_coefficient(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    k: usize,
    n: usize,
) -> Result<u64> {
    for p in [lambda, mu, nu] {
        if !p.fits_box(k, n) {
            return Err(Error::Precondition(format!(
                "partition {:?} does not fit in the {k} x {} box",
                p.parts(),
                n - k
            )));
        }
    }
    Ok(lr_coeff(lambda, mu, nu))
}

/// An element of the small quantum cohomology ring of `Gr(k, n)`: a map from
/// `(partition, q-degree)` to an integer coefficient.
pub type QElem = BTreeMap<(Partition, u32), i64>;

/// `n`-rim-hook reduction of a partition with at most `k` rows via
/// beta-numbers. Returns the boxed partition, the number of removed hooks,
/// and the sign, or `None` when the class reduces to zero.
fn rim_hook_reduce(parts: &Partition, k: usize, n: usize) -> Option<(Partition, u32, i64)> {
    let n_i = n as i64;
    let betas: Vec<i64> =
        (0..k).map(|i| parts.part(i) as i64 + (k - 1 - i) as i64).collect();
    let residues: Vec<i64> = betas.iter().map(|b| b.rem_euclid(n_i)).collect();
    // Collision mod n kills the class.
    for i in 0..k {
        for j in i + 1..k {
            if residues[i] == residues[j] {
                return None;
            }
        }
    }
    let hooks: i64 = betas.iter().zip(&residues).map(|(b, r)| (b - r) / n_i).sum();
    // Crossing parity: pairs whose order flips between the original betas
    // (strictly decreasing) and their residues.
    let mut inversions = 0u32;
    for i in 0..k {
        for j in i + 1..k {
            if residues[i] < residues[j] {
                inversions += 1;
            }
        }
    }
    // Each removed hook of height h contributes (-1)^(k - h); heights track
    // beta crossings, so the total is (-1)^(hooks (k-1)) times the crossing
    // parity.
    let sign = if (hooks * (k as i64 - 1) + inversions as i64) % 2 == 0 { 1 } else { -1 };
    let mut sorted = residues;
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let reduced = Partition::new(
        (0..k).map(|i| (sorted[i] - (k - 1 - i) as i64) as u32).collect(),
    )
    .expect("distinct residues give a valid partition");
    Some((reduced, hooks as u32, sign))
}

/// All partitions `nu >= lambda` with `|nu| = |lambda| + extra` and at most
/// `k` rows (first-row growth capped by `cap1`, which is sound for
/// Littlewood-Richardson supports).
fn grow_partitions(lambda: &Partition, extra: u64, k: usize, cap1: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut deltas = vec![0u32; k];
    fn dfs(
        row: usize,
        remaining: u64,
        lambda: &Partition,
        deltas: &mut Vec<u32>,
        k: usize,
        cap1: u32,
        out: &mut Vec<Partition>,
    ) {
        if row == k {
            if remaining == 0 {
                let parts: Vec<u32> =
                    (0..k).map(|i| lambda.part(i) + deltas[i]).collect();
                if let Ok(p) = Partition::new(parts) {
                    out.push(p);
                }
            }
            return;
        }
        let row_cap = if row == 0 { cap1 as u64 } else { u64::MAX };
        // Keep weak decrease: this row may not exceed the previous total row.
        let prev_total = if row == 0 {
            u64::MAX
        } else {
            lambda.part(row - 1) as u64 + deltas[row - 1] as u64
        };
        let max_here = remaining
            .min(row_cap)
            .min(prev_total.saturating_sub(lambda.part(row) as u64));
        for delta in 0..=max_here {
            deltas[row] = delta as u32;
            dfs(row + 1, remaining - delta, lambda, deltas, k, cap1, out);
        }
        deltas[row] = 0;
    }
    dfs(0, extra, lambda, &mut deltas, k, cap1, &mut out);
    out
}

/// Multiply a quantum ring element by a boxed Schubert class.
pub fn quantum_mul(elem: &QElem, class: &Partition, k: usize, n: usize) -> QElem {
    let mut out: QElem = BTreeMap::new();
    for ((nu, qdeg), &coeff) in elem {
        if coeff == 0 {
            continue;
        }
        for target in grow_partitions(nu, class.size(), k, class.part(0)) {
            let c = lr_coeff(nu, class, &target);
            if c == 0 {
                continue;
            }
            if let Some((reduced, hooks, sign)) = rim_hook_reduce(&target, k, n) {
                let entry = out.entry((reduced, qdeg + hooks)).or_insert(0);
                *entry += coeff * sign * c as i64;
                // Quantum Schubert structure constants never cancel to
                // negative totals; zero entries are dropped at the end.
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// The multiplicative unit.
pub fn quantum_one() -> QElem {
    BTreeMap::from([((Partition::empty(), 0u32), 1i64)])
}

/// A Gromov-Witten invariant query on `Gr(k, n)`: at least two boxed classes
/// and a curve degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GWQuery {
    pub k: usize,
    pub n: usize,
    pub classes: Vec<Partition>,
    pub degree: u32,
}

impl GWQuery {
    pub fn new(k: usize, n: usize, classes: Vec<Partition>, degree: u32) -> Result<GWQuery> {
        if k < 1 || k >= n {
            return Err(Error::Invariant(format!("need 1 <= k < n, got k = {k}, n = {n}")));
        }
        if classes.len() < 2 {
            return Err(Error::Invariant("need at least two classes".into()));
        }
        for c in &classes {
            if !c.fits_box(k, n) {
                return Err(Error::Invariant(format!(
                    "class {:?} does not fit in the {k} x {} box",
                    c.parts(),
                    n - k
                )));
            }
        }
        Ok(GWQuery { k, n, classes, degree })
    }

    pub fn from_subsets(
        n: usize,
        subsets: &[SchubertSubset],
        degree: u32,
    ) -> Result<GWQuery> {
        if subsets.is_empty() {
            return Err(Error::Invariant("need at least one subset".into()));
        }
        let k = subsets[0].len();
        if subsets.iter().any(|s| s.len() != k) {
            return Err(Error::Invariant("all subsets must share their size".into()));
        }
        let classes = subsets
            .iter()
            .map(|s| subset_to_partition(s, k, n))
            .collect::<Result<Vec<_>>>()?;
        GWQuery::new(k, n, classes, degree)
    }

    /// Whether the codimensions saturate the moduli dimension
    /// `k (n - k) + degree * n`.
    pub fn dimension_condition(&self) -> bool {
        let total: u64 = self.classes.iter().map(|c| c.size()).sum();
        total == (self.k * (self.n - self.k)) as u64 + self.degree as u64 * self.n as u64
    }
}

/// Value of a Gromov-Witten query together with the dimension flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GwResult {
    pub value: u64,
    pub dimension_ok: bool,
}

/// Genus-zero Gromov-Witten invariant of `Gr(k, n)` by iterated quantum
/// products. When the dimension condition fails the graded ring forces the
/// coefficient to zero; the flag reports the failure so enumerative
/// nonemptiness claims can be treated separately.
pub fn gw_invariant(query: &GWQuery) -> Result<GwResult> {
    let m = query.classes.len();
    let mut acc = quantum_one();
    for class in &query.classes[..m - 1] {
        acc = quantum_mul(&acc, class, query.k, query.n);
    }
    let dual = query.classes[m - 1].dual_in_box(query.k, query.n)?;
    let value = acc.get(&(dual, query.degree)).copied().unwrap_or(0);
    if value < 0 {
        return Err(Error::Invariant(format!(
            "negative structure constant {value}; rim-hook reduction is inconsistent"
        )));
    }
    Ok(GwResult { value: value as u64, dimension_ok: query.dimension_condition() })
}

/// Which right-hand side the existence inequalities use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IneqRhs {
    /// The curve degree of the indexing invariant (the well-posed reading).
    CurveDegree,
    /// The number of punctures (a literal reading kept for comparison).
    PunctureCount,
}

/// A violated inequality: the tuple, its degree, and both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub s: usize,
    pub subsets: Vec<SchubertSubset>,
    pub degree: u32,
    pub invariant: u64,
    pub lambda_sum: Rat,
    pub rhs: Rat,
}

/// Existence verdict with its violation certificates; `exists` iff none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExistenceVerdict {
    pub exists: bool,
    pub violations: Vec<Violation>,
    /// Tuples with positive invariant other than one, listed when requested.
    pub diagnostics: Vec<Violation>,
}

/// Decide SU(n) Deligne-Simpson existence for the given classes: enumerate
/// `s` in `1..n`, all tuples of size-`s` subsets whose total codimension
/// matches a curve degree, and check `sum_j lambda_{I_j}(C_j) <= rhs` for
/// every tuple with invariant exactly one.
pub fn su_existence(
    classes: &[SUnClass],
    rhs_mode: IneqRhs,
    diagnostics: bool,
) -> Result<ExistenceVerdict> {
    if classes.is_empty() {
        return Err(Error::Precondition("need at least one class".into()));
    }
    let n = classes[0].rank();
    if classes.iter().any(|c| c.rank() != n) {
        return Err(Error::Invariant("all classes must share the same rank".into()));
    }
    let d = classes.len();
    let mut violations = Vec::new();
    let mut diag = Vec::new();

    for s in 1..n {
        let subsets: Vec<SchubertSubset> = subsets_of_size(n, s);
        let parts: Vec<Partition> = subsets
            .iter()
            .map(|sub| subset_to_partition(sub, s, n))
            .collect::<Result<Vec<_>>>()?;
        let lambdas: Vec<Vec<Rat>> = classes
            .iter()
            .map(|c| subsets.iter().map(|sub| c.lambda(sub.elems())).collect())
            .collect();
        let max_delta = (d * s * (n - s)) / n;

        // Depth-first over tuple prefixes, sharing partial quantum products.
        let mut choice = vec![0usize; d];
        let mut prods: Vec<QElem> = vec![quantum_one()];
        let mut codims: Vec<u64> = vec![0];
        let cell = s as u64 * (n - s) as u64;
        let dim0 = cell;
        loop {
            let depth = prods.len() - 1;
            if depth == d {
                // Leaf: the degree is pinned by the dimension condition.
                let total = codims[d];
                let last = choice[d - 1];
                if total >= dim0 && (total - dim0).is_multiple_of(n as u64) {
                    let delta = ((total - dim0) / n as u64) as u32;
                    if delta as usize <= max_delta {
                        let dual = parts[last].dual_in_box(s, n)?;
                        let coeff =
                            prods[d - 1].get(&(dual, delta)).copied().unwrap_or(0);
                        if coeff > 0 {
                            let lambda_sum: Rat =
                                (0..d).map(|j| lambdas[j][choice[j]].clone()).sum();
                            let rhs = match rhs_mode {
                                IneqRhs::CurveDegree => Rat::from_int(delta as i64),
                                IneqRhs::PunctureCount => Rat::from_int(d as i64),
                            };
                            let record = Violation {
                                s,
                                subsets: (0..d)
                                    .map(|j| subsets[choice[j]].clone())
                                    .collect(),
                                degree: delta,
                                invariant: coeff as u64,
                                lambda_sum: lambda_sum.clone(),
                                rhs: rhs.clone(),
                            };
                            if coeff == 1 && lambda_sum > rhs {
                                violations.push(record);
                            } else if diagnostics && coeff != 1 {
                                diag.push(record);
                            }
                        }
                    }
                }
                // Advance the last coordinate or backtrack.
                if !advance(&mut choice, &mut prods, &mut codims, subsets.len()) {
                    break;
                }
            } else {
                // Extend the prefix with subset 0 at this depth.
                let idx = choice[depth];
                let next_prod = if depth == d - 1 {
                    // The last class is paired, not multiplied.
                    prods[depth].clone()
                } else {
                    quantum_mul(&prods[depth], &parts[idx], s, n)
                };
                codims.push(codims[depth] + parts[idx].size());
                prods.push(next_prod);
            }
        }
    }

    violations.sort_by(|a, b| (a.s, &a.subsets, a.degree).cmp(&(b.s, &b.subsets, b.degree)));
    diag.sort_by(|a, b| (a.s, &a.subsets, a.degree).cmp(&(b.s, &b.subsets, b.degree)));
    Ok(ExistenceVerdict { exists: violations.is_empty(), violations, diagnostics: diag })
}

/// Move to the next tuple in lexicographic order, popping exhausted levels.
fn advance(
    choice: &mut [usize],
    prods: &mut Vec<QElem>,
    codims: &mut Vec<u64>,
    num_subsets: usize,
) -> bool {
    let d = choice.len();
    let mut depth = d;
    loop {
        if depth == 0 {
            return false;
        }
        depth -= 1;
        prods.pop();
        codims.pop();
        if choice[depth] + 1 < num_subsets {
            choice[depth] += 1;
            for c in choice[depth + 1..].iter_mut() {
                *c = 0;
            }
            return true;
        }
        choice[depth] = 0;
    }
}

fn subsets_of_size(n: usize, s: usize) -> Vec<SchubertSubset> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (1..=s as u32).collect();
    loop {
        out.push(SchubertSubset::new(cur.clone(), n).unwrap());
        let mut i = s;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] as usize != i + 1 + n - s {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..s {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// A modified (complete) parabolic bundle: trivial underlying bundle,
/// integer-shifted weights fitting a common window of length one at each
/// puncture, and the shift ledger.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModifiedBundle {
    /// Shifted weights, one list per summand (degrees are all zero).
    pub weights: Vec<Vec<Rat>>,
    /// The integer shift applied to each (summand, puncture) weight; row
    /// sums equal the original summand degrees.
    pub shifts: Vec<Vec<i64>>,
    pub par_deg: Rat,
}

/// Compute the modified bundle of an adapted-flag split bundle: each summand
/// of degree `m` distributes integer shifts summing to `m` over its weights
/// so that, at every puncture, all modified weights lie within a window of
/// length one. Parabolic degree is preserved exactly. Reports infeasibility
/// instead of forcing a window.
pub fn modified_bundle(e: &SplitParabolicBundle) -> Result<ModifiedBundle> {
    if !e.effectively_adapted() {
        return Err(Error::Precondition("modified_bundle needs adapted flags".into()));
    }
    let d = e.punctures();
    if d == 0 {
        return Err(Error::Precondition("modified_bundle needs at least one puncture".into()));
    }
    let rank = e.rank();
    let degrees: Vec<i64> = e.summands().iter().map(|s| s.degree).collect();
    let min_deg = *degrees.iter().min().unwrap();
    let max_deg = *degrees.iter().max().unwrap();

    // Column structure: at each puncture the summands that take an extra +1
    // must have weights strictly below all others, so the admissible groups
    // are prefixes of the weight order that do not split ties.
    let mut col_orders: Vec<Vec<usize>> = Vec::with_capacity(d);
    let mut col_prefixes: Vec<Vec<usize>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut order: Vec<usize> = (0..rank).collect();
        order.sort_by(|&a, &b| e.summands()[a].weights[j].cmp(&e.summands()[b].weights[j]));
        let mut prefixes = vec![0usize];
        for t in 1..=rank {
            if t == rank
                || e.summands()[order[t - 1]].weights[j] != e.summands()[order[t]].weights[j]
            {
                prefixes.push(t);
            }
        }
        col_orders.push(order);
        col_prefixes.push(prefixes);
    }

    // Search over the shared base total and per-column prefix sizes.
    for total in (max_deg - d as i64..=min_deg).rev() {
        let needs: Vec<i64> = degrees.iter().map(|m| m - total).collect();
        if needs.iter().any(|&r| r < 0 || r > d as i64) {
            continue;
        }
        if let Some(levels) = assign_levels(&needs, &col_orders, &col_prefixes) {
            // Even split of the base total over the punctures.
            let q = total.div_euclid(d as i64);
            let rem = total.rem_euclid(d as i64) as usize;
            let mut shifts = vec![vec![0i64; d]; rank];
            for j in 0..d {
                let base = q + if j < rem { 1 } else { 0 };
                for (pos, &i) in col_orders[j].iter().enumerate() {
                    shifts[i][j] = base + if pos < levels[j] { 1 } else { 0 };
                }
            }
            let weights: Vec<Vec<Rat>> = (0..rank)
                .map(|i| {
                    (0..d)
                        .map(|j| {
                            e.summands()[i].weights[j].clone()
                                + Rat::from_int(shifts[i][j])
                        })
                        .collect()
                })
                .collect();
            let par_deg: Rat = weights.iter().flatten().sum();
            debug_assert_eq!(par_deg, e.par_deg());
            return Ok(ModifiedBundle { weights, shifts, par_deg });
        }
    }
    Err(Error::Precondition(
        "modified_bundle: no window assignment exists (summand degrees differ by more than \
         the puncture count)"
            .into(),
    ))
}

/// Pick a prefix size per column so that each summand is covered exactly
/// `needs[i]` times. Depth-first with simple feasibility pruning.
fn assign_levels(
    needs: &[i64],
    col_orders: &[Vec<usize>],
    col_prefixes: &[Vec<usize>],
) -> Option<Vec<usize>> {
    let d = col_orders.len();
    let total_needed: i64 = needs.iter().sum();
    let mut remaining = needs.to_vec();
    let mut levels = vec![0usize; d];

    fn dfs(
        j: usize,
        d: usize,
        budget: i64,
        remaining: &mut Vec<i64>,
        levels: &mut Vec<usize>,
        col_orders: &[Vec<usize>],
        col_prefixes: &[Vec<usize>],
    ) -> bool {
        if j == d {
            return budget == 0 && remaining.iter().all(|&r| r == 0);
        }
        let cols_left = (d - j) as i64;
        if remaining.iter().any(|&r| r > cols_left) {
            return false;
        }
        for &lvl in &col_prefixes[j] {
            // The prefix must consist of summands that still need coverage.
            if col_orders[j][..lvl].iter().any(|&i| remaining[i] == 0) {
                continue;
            }
            if (lvl as i64) > budget {
                continue;
            }
            for &i in &col_orders[j][..lvl] {
                remaining[i] -= 1;
            }
            levels[j] = lvl;
            if dfs(j + 1, d, budget - lvl as i64, remaining, levels, col_orders, col_prefixes) {
                return true;
            }
            for &i in &col_orders[j][..lvl] {
                remaining[i] += 1;
            }
        }
        levels[j] = 0;
        false
    }

    if dfs(0, d, total_needed, &mut remaining, &mut levels, col_orders, col_prefixes) {
        Some(levels)
    } else {
        None
    }
}

/// A Gromov-Witten certificate extracted from a destabilized two-step model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GwCertificate {
    pub subsets: Vec<SchubertSubset>,
    pub degree: u32,
    pub query: GWQuery,
    pub invariant: GwResult,
    /// Degree of the modified destabilizing subbundle (`-degree`).
    pub h_modified_degree: i64,
    /// Its shifted weights, parabolic degree preserved.
    pub h_modified_weights: Vec<Rat>,
    pub claim: String,
}

/// Assemble the Gromov-Witten certificate of a destabilized two-step model:
/// the subset at each puncture records the positions of the top piece's
/// weights in the full weight list sorted decreasing; the degree is the
/// smallest curve degree compatible with the total codimension of those
/// Schubert conditions. The modified subbundle realizing the certificate has
/// degree minus that, with a parabolic-degree-preserving shift ledger.
pub fn gw_certificate(model: &GradedHiggsModel) -> Result<GwCertificate> {
    if model.num_pieces() != 2 {
        return Err(Error::Precondition("gw_certificate needs a two-step model".into()));
    }
    let h = model.piece(2);
    if !(h.par_slope().is_positive() && !model.par_slope().is_positive()) {
        return Err(Error::Precondition(
            "gw_certificate: the top piece is not destabilizing (need par_slope(H) > 0 >= \
             par_slope(E))"
                .into(),
        ));
    }
    let n = model.rank();
    let k = h.rank();
    let d = model.punctures();
    let quotient = model.piece(1);

    let mut subsets = Vec::with_capacity(d);
    for j in 0..d {
        let mut all: Vec<(Rat, bool)> = h
            .summands()
            .iter()
            .map(|s| (s.weights[j].clone(), true))
            .chain(quotient.summands().iter().map(|s| (s.weights[j].clone(), false)))
            .collect();
        for a in 0..all.len() {
            for b in a + 1..all.len() {
                if all[a].0 == all[b].0 {
                    return Err(Error::Precondition(format!(
                        "gw_certificate needs distinct weights at every puncture; tie at {j}"
                    )));
                }
            }
        }
        all.sort_by(|a, b| b.0.cmp(&a.0));
        let elems: Vec<u32> = all
            .iter()
            .enumerate()
            .filter(|(_, (_, from_h))| *from_h)
            .map(|(pos, _)| pos as u32 + 1)
            .collect();
        subsets.push(SchubertSubset::new(elems, n)?);
    }

    let total_codim: u64 = subsets
        .iter()
        .map(|s| subset_to_partition(s, k, n).map(|p| p.size()))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .sum();
    let cell = (k * (n - k)) as u64;
    let degree = if total_codim <= cell {
        0
    } else {
        ((total_codim - cell) as f64 / n as f64).ceil() as u32
    };

    // Modified subbundle of degree -degree with the excess shifted into the
    // weights, largest first.
    let shift_total = h.degree() + degree as i64;
    let mut per_summand: Vec<Vec<Rat>> =
        h.summands().iter().map(|s| s.weights.clone()).collect();
    let mut todo = shift_total;
    while todo != 0 {
        let step = if todo < 0 { -1 } else { 1 };
        // Shift the currently extreme weight.
        let (bi, bj) = {
            let mut best = (0usize, 0usize);
            for i in 0..per_summand.len() {
                for j in 0..d {
                    let better = if step < 0 {
                        per_summand[i][j] > per_summand[best.0][best.1]
                    } else {
                        per_summand[i][j] < per_summand[best.0][best.1]
                    };
                    if better {
                        best = (i, j);
                    }
                }
            }
            best
        };
        per_summand[bi][bj] = per_summand[bi][bj].clone() + Rat::from_int(step);
        todo -= step;
    }
    let weights: Vec<Rat> = per_summand.iter().flatten().cloned().collect();

    let query = GWQuery::from_subsets(n, &subsets, degree)?;
    let invariant = gw_invariant(&query)?;
    let claim = format!(
        "the modified destabilizing subbundle is a degree-{degree} rational curve through the \
         listed Schubert varieties; the intersection is asserted nonempty (enumerative claim, \
         independent of the ring-theoretic value)"
    );
    Ok(GwCertificate {
        subsets,
        degree,
        query,
        invariant,
        h_modified_degree: -(degree as i64),
        h_modified_weights: weights,
        claim,
    })
}
