//! Sparse multi-qubit Pauli operators over the GF(2) symplectic representation,
//! plus generator sets with group-membership and minimum-weight searches.
//!
//! Signs are tracked only up to ±1: the `i` arising from products like X·Z is
//! collapsed (phase exponent 0 or 1 maps to `+`, 2 or 3 maps to `-`). The
//! protocol only ever consumes measurement-outcome parities, so the quarter
//! phases never become observable.

use crate::gf2::{BitMatrix, BitVec, Eliminator};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub type Qubit = u32;

/// Single-qubit Pauli letter (identity is represented by absence).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    X,
    Y,
    Z,
}

impl Letter {
    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Option<Letter> {
        match (x, z) {
            (false, false) => None,
            (true, false) => Some(Letter::X),
            (true, true) => Some(Letter::Y),
            (false, true) => Some(Letter::Z),
        }
    }

    #[inline]
    pub fn anticommutes(self, other: Letter) -> bool {
        self != other
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X => write!(f, "X"),
            Letter::Y => write!(f, "Y"),
            Letter::Z => write!(f, "Z"),
        }
    }
}

/// Sparse multi-qubit Pauli with a ±1 sign.
///
/// Canonical form: `support` never contains identity entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PauliOperator {
    support: BTreeMap<Qubit, Letter>,
    negative: bool,
}

impl Default for PauliOperator {
    fn default() -> Self {
        Self::identity()
    }
}

impl PauliOperator {
    pub fn identity() -> Self {
        PauliOperator {
            support: BTreeMap::new(),
            negative: false,
        }
    }

    pub fn single(qubit: Qubit, letter: Letter) -> Self {
        let mut support = BTreeMap::new();
        support.insert(qubit, letter);
        PauliOperator {
            support,
            negative: false,
        }
    }

    pub fn from_letters<I: IntoIterator<Item = (Qubit, Letter)>>(letters: I) -> Self {
        let mut p = PauliOperator::identity();
        for (q, l) in letters {
            let prev = p.support.insert(q, l);
            assert!(prev.is_none(), "duplicate qubit {q} in Pauli constructor");
        }
        p
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn is_identity(&self) -> bool {
        self.support.is_empty()
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn set_negative(&mut self, negative: bool) {
        self.negative = negative;
    }

    pub fn letter(&self, qubit: Qubit) -> Option<Letter> {
        self.support.get(&qubit).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Qubit, Letter)> + '_ {
        self.support.iter().map(|(&q, &l)| (q, l))
    }

    pub fn qubits(&self) -> impl Iterator<Item = Qubit> + '_ {
        self.support.keys().copied()
    }

    /// Product PQ with the quarter-phase collapsed onto ±1.
    ///
    /// Per-qubit phase exponents of i (XZ = -iY etc.) are summed mod 4;
    /// exponents {0, 1} map to `+`, {2, 3} to `-`.
    pub fn multiply(&self, other: &PauliOperator) -> PauliOperator {
        let mut support = self.support.clone();
        let mut phase: u8 = 0; // exponent of i mod 4
        for (&q, &lb) in &other.support {
            match support.remove(&q) {
                None => {
                    support.insert(q, lb);
                }
                Some(la) => {
                    phase = (phase + letter_phase(la, lb)) % 4;
                    let (xa, za) = la.bits();
                    let (xb, zb) = lb.bits();
                    if let Some(l) = Letter::from_bits(xa ^ xb, za ^ zb) {
                        support.insert(q, l);
                    }
                }
            }
        }
        let negative = self.negative ^ other.negative ^ (phase >= 2);
        PauliOperator { support, negative }
    }

    /// Symplectic inner product over the shared support.
    pub fn commutes(&self, other: &PauliOperator) -> bool {
        let (short, long) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut anti = 0usize;
        for (q, la) in short.iter() {
            if let Some(lb) = long.letter(q) {
                if la.anticommutes(lb) {
                    anti += 1;
                }
            }
        }
        anti % 2 == 0
    }

    /// Restriction of the operator to qubits passing the predicate (sign kept).
    pub fn restricted<F: Fn(Qubit) -> bool>(&self, keep: F) -> PauliOperator {
        PauliOperator {
            support: self
                .support
                .iter()
                .filter(|(&q, _)| keep(q))
                .map(|(&q, &l)| (q, l))
                .collect(),
            negative: self.negative,
        }
    }

    /// Dense symplectic row [x-block | z-block] for a qubit indexing map.
    pub fn to_row(&self, index_of: &BTreeMap<Qubit, usize>, n: usize) -> BitVec {
        let mut row = BitVec::zeros(2 * n);
        for (q, l) in self.iter() {
            let i = *index_of
                .get(&q)
                .unwrap_or_else(|| panic!("qubit {q} missing from index map"));
            let (x, z) = l.bits();
            if x {
                row.set(i, true);
            }
            if z {
                row.set(n + i, true);
            }
        }
        row
    }

    pub fn from_row(row: &BitVec, qubit_of: &[Qubit]) -> PauliOperator {
        let n = qubit_of.len();
        debug_assert_eq!(row.len(), 2 * n);
        let mut p = PauliOperator::identity();
        for (i, &q) in qubit_of.iter().enumerate() {
            if let Some(l) = Letter::from_bits(row.get(i), row.get(n + i)) {
                p.support.insert(q, l);
            }
        }
        p
    }
}

/// Exponent of i contributed by the ordered single-qubit product `a · b`.
fn letter_phase(a: Letter, b: Letter) -> u8 {
    use Letter::*;
    match (a, b) {
        (X, Y) => 1, // XY = iZ
        (Y, Z) => 1, // YZ = iX
        (Z, X) => 1, // ZX = iY
        (Y, X) => 3,
        (Z, Y) => 3,
        (X, Z) => 3,
        _ => 0, // equal letters square to identity
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        } else {
            write!(f, "+")?;
        }
        if self.is_identity() {
            return write!(f, "I");
        }
        let mut first = true;
        for (q, l) in self.iter() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}{q}")?;
            first = false;
        }
        Ok(())
    }
}

/// Circuit elements that conjugate Paulis (the Clifford subset we schedule).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CliffordGate {
    Cx { control: Qubit, target: Qubit },
    Cy { control: Qubit, target: Qubit },
    Cz { a: Qubit, b: Qubit },
    H { qubit: Qubit },
}

impl CliffordGate {
    pub fn qubits(&self) -> (Qubit, Option<Qubit>) {
        match *self {
            CliffordGate::Cx { control, target } | CliffordGate::Cy { control, target } => {
                (control, Some(target))
            }
            CliffordGate::Cz { a, b } => (a, Some(b)),
            CliffordGate::H { qubit } => (qubit, None),
        }
    }
}

/// U P U† for the supported gate set. Signs track the ±1 convention.
pub fn conjugate(gate: CliffordGate, p: &PauliOperator) -> PauliOperator {
    match gate {
        CliffordGate::Cx { control, target } => conj_controlled(p, control, target, Letter::X),
        CliffordGate::Cy { control, target } => conj_controlled(p, control, target, Letter::Y),
        CliffordGate::Cz { a, b } => conj_controlled(p, a, b, Letter::Z),
        CliffordGate::H { qubit } => {
            let mut out = p.clone();
            if let Some(l) = out.support.remove(&qubit) {
                let (nl, neg) = match l {
                    Letter::X => (Letter::Z, false),
                    Letter::Z => (Letter::X, false),
                    Letter::Y => (Letter::Y, true),
                };
                out.support.insert(qubit, nl);
                if neg {
                    out.negative = !out.negative;
                }
            }
            out
        }
    }
}

/// Controlled-L conjugation of a Pauli, exact on signs.
///
/// With U = |0⟩⟨0|⊗I + |1⟩⟨1|⊗L and P = P_c ⊗ P_t ⊗ rest:
///   - P_c commutes with Z, P_t commutes with L: unchanged.
///   - only P_t anticommutes with L: picks up Z_c (no phase).
///   - only P_c anticommutes with Z: target becomes L·P_t (no phase).
///   - both anticommute: U(X⊗P_t)U† = i·Y ⊗ (P_t·L) and
///     U(Y⊗P_t)U† = i·X ⊗ (L·P_t); the quarter phases combine to ±1.
fn conj_controlled(p: &PauliOperator, c: Qubit, t: Qubit, l: Letter) -> PauliOperator {
    let pc = p.letter(c);
    let pt = p.letter(t);
    let control_anti = pc.map_or(false, |x| x.anticommutes(Letter::Z));
    let target_anti = pt.map_or(false, |x| x.anticommutes(l));
    let mut out = p.clone();
    match (control_anti, target_anti) {
        (false, false) => out,
        (false, true) => {
            toggle_letter(&mut out, c, Letter::Z);
            out
        }
        (true, false) => {
            toggle_letter(&mut out, t, l);
            out
        }
        (true, true) => {
            let pcl = pc.unwrap();
            let ptl = pt.unwrap();
            // i-exponent of P_t·L = i^k M
            let k = letter_phase(ptl, l);
            let exp = if pcl == Letter::X {
                (1 + k) % 4
            } else {
                // P_c = Y
                (5 + 4 - k) % 4
            };
            debug_assert!(exp == 0 || exp == 2, "conjugation must stay Hermitian");
            // control: X <-> Y; target: third letter of (P_t, L)
            let new_c = if pcl == Letter::X { Letter::Y } else { Letter::X };
            let (xa, za) = ptl.bits();
            let (xb, zb) = l.bits();
            let new_t = Letter::from_bits(xa ^ xb, za ^ zb).expect("anticommuting letters differ");
            out.support.insert(c, new_c);
            out.support.insert(t, new_t);
            if exp == 2 {
                out.negative = !out.negative;
            }
            out
        }
    }
}

/// Multiply the letter at `q` by `l` in-place; only valid when the existing
/// letter is absent or equal to `l` (no phase arises).
fn toggle_letter(p: &mut PauliOperator, q: Qubit, l: Letter) {
    match p.support.remove(&q) {
        None => {
            p.support.insert(q, l);
        }
        Some(existing) => {
            debug_assert_eq!(existing, l, "toggle_letter only handles phase-free products");
        }
    }
}

/// Whether a generator list should behave as a stabilizer group (all pairs
/// commute) or merely a gauge group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupLabel {
    Stabilizer,
    Gauge,
}

/// Ordered list of Pauli generators with GF(2) machinery attached.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub generators: Vec<PauliOperator>,
    pub label: GroupLabel,
    index_of: BTreeMap<Qubit, usize>,
    qubit_of: Vec<Qubit>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<PauliOperator>, label: GroupLabel) -> Self {
        let mut qubits: Vec<Qubit> = generators
            .iter()
            .flat_map(|g| g.qubits().collect::<Vec<_>>())
            .collect();
        qubits.sort_unstable();
        qubits.dedup();
        Self::with_qubits(generators, label, qubits)
    }

    /// Build over an explicit qubit universe (needed when logicals live on
    /// qubits no generator touches).
    pub fn with_qubits(generators: Vec<PauliOperator>, label: GroupLabel, qubits: Vec<Qubit>) -> Self {
        let index_of: BTreeMap<Qubit, usize> =
            qubits.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        GeneratorSet {
            generators,
            label,
            index_of,
            qubit_of: qubits,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.qubit_of.len()
    }

    pub fn qubit_universe(&self) -> &[Qubit] {
        &self.qubit_of
    }

    pub fn index_map(&self) -> &BTreeMap<Qubit, usize> {
        &self.index_of
    }

    pub fn to_matrix(&self) -> BitMatrix {
        let n = self.n_qubits();
        let mut m = BitMatrix::new(2 * n);
        for g in &self.generators {
            m.push(g.to_row(&self.index_of, n));
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.to_matrix().rank()
    }

    /// All generator pairs commute.
    pub fn all_commute(&self) -> bool {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if !a.commutes(b) {
                    return false;
                }
            }
        }
        true
    }

    /// Generators are GF(2)-independent.
    pub fn independent(&self) -> bool {
        self.rank() == self.generators.len()
    }

    /// GF(2) membership test, sign ignored.
    pub fn contains(&self, p: &PauliOperator) -> bool {
        if p.qubits().any(|q| !self.index_of.contains_key(&q)) {
            return false;
        }
        let n = self.n_qubits();
        let elim = Eliminator::from_rows(2 * n, self.to_matrix().rows);
        elim.contains(&p.to_row(&self.index_of, n))
    }
}

/// GF(2) group membership: is `p` (up to sign) a product of `group`'s generators?
pub fn in_group(p: &PauliOperator, group: &GeneratorSet) -> bool {
    group.contains(p)
}

/// Result of a bounded minimum-weight logical search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightSearch {
    /// Minimal weight found, with a witness operator.
    Found { weight: usize, witness: PauliOperator },
    /// No logical exists at or below the bound searched.
    BoundReached { bound: usize },
}

impl WeightSearch {
    pub fn weight(&self) -> Option<usize> {
        match self {
            WeightSearch::Found { weight, .. } => Some(*weight),
            WeightSearch::BoundReached { .. } => None,
        }
    }
}

/// Restriction filter for the logical search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliRestriction {
    PureZ,
    Any,
}

/// Minimum weight over Paulis commuting with every element of `stabilizer`,
/// not contained in `gauge`, matching `restriction`, searched up to `bound`
/// by meet-in-the-middle over half-weight supports.
pub fn min_weight_logical(
    stabilizer: &GeneratorSet,
    gauge: &GeneratorSet,
    restriction: PauliRestriction,
    bound: usize,
) -> WeightSearch {
    // Work over the union universe so logicals on untouched qubits count.
    let mut qubits: Vec<Qubit> = stabilizer
        .qubit_universe()
        .iter()
        .chain(gauge.qubit_universe().iter())
        .copied()
        .collect();
    qubits.sort_unstable();
    qubits.dedup();
    let n = qubits.len();
    let index_of: BTreeMap<Qubit, usize> = qubits.iter().enumerate().map(|(i, &q)| (q, i)).collect();

    let stab_rows: Vec<BitVec> = stabilizer
        .generators
        .iter()
        .map(|g| g.to_row(&index_of, n))
        .collect();
    let gauge_elim = {
        let rows: Vec<BitVec> = gauge
            .generators
            .iter()
            .map(|g| g.to_row(&index_of, n))
            .collect();
        Eliminator::from_rows(2 * n, rows)
    };

    let letters: &[Letter] = match restriction {
        PauliRestriction::PureZ => &[Letter::Z],
        PauliRestriction::Any => &[Letter::X, Letter::Y, Letter::Z],
    };

    // Syndrome of a candidate = vector of anticommutations with stab_rows.
    let syndrome_of = |p: &[(usize, Letter)]| -> u128 {
        debug_assert!(stab_rows.len() <= 128);
        let mut s: u128 = 0;
        for (bi, row) in stab_rows.iter().enumerate() {
            let mut anti = false;
            for &(qi, l) in p {
                let (x, z) = l.bits();
                // symplectic product against row: x·row_z + z·row_x
                let rx = row.get(qi);
                let rz = row.get(n + qi);
                if (x && rz) ^ (z && rx) {
                    anti = !anti;
                }
            }
            if anti {
                s |= 1u128 << (bi % 128);
            }
            if bi >= 127 {
                break;
            }
        }
        s
    };

    assert!(
        stab_rows.len() <= 128,
        "min_weight_logical supports at most 128 stabilizer generators (desk scale)"
    );

    let make_pauli = |half_a: &[(usize, Letter)], half_b: &[(usize, Letter)]| -> PauliOperator {
        PauliOperator::from_letters(
            half_a
                .iter()
                .chain(half_b.iter())
                .map(|&(qi, l)| (qubits[qi], l)),
        )
    };

    let is_logical = |p: &PauliOperator| -> bool {
        let row = p.to_row(&index_of, n);
        !gauge_elim.contains(&row)
    };

    for w in 1..=bound {
        let wa = w / 2;
        let wb = w - wa;
        // Enumerate weight-wa on one side, weight-wb on the other, joined on
        // equal stabilizer syndromes. Disjoint supports enforced by ordering:
        // side A uses the lowest qubit index strictly below side B's lowest.
        use std::collections::HashMap;
        let mut by_syndrome: HashMap<u128, Vec<Vec<(usize, Letter)>>> = HashMap::new();
        if wa == 0 {
            by_syndrome.entry(0).or_default().push(Vec::new());
        } else {
            enumerate_supports(n, wa, letters, &mut |cand| {
                by_syndrome
                    .entry(syndrome_of(cand))
                    .or_default()
                    .push(cand.to_vec());
            });
        }
        let mut best: Option<PauliOperator> = None;
        enumerate_supports(n, wb, letters, &mut |cand| {
            if best.is_some() {
                return;
            }
            let s = syndrome_of(cand);
            if let Some(mates) = by_syndrome.get(&s) {
                for a in mates {
                    // require disjoint supports and a canonical split to
                    // avoid duplicates: max(A) < min(B)
                    if let (Some(&(amax, _)), Some(&(bmin, _))) = (a.last(), cand.first()) {
                        if amax >= bmin {
                            continue;
                        }
                    }
                    let p = make_pauli(a, cand);
                    if p.weight() == w && is_logical(&p) {
                        best = Some(p);
                        return;
                    }
                }
            }
        });
        if let Some(witness) = best {
            return WeightSearch::Found { weight: w, witness };
        }
    }
    WeightSearch::BoundReached { bound }
}

/// Enumerate all supports of exactly `w` qubits (ascending indices) with all
/// letter assignments from `letters`, invoking `f` on each candidate.
fn enumerate_supports(
    n: usize,
    w: usize,
    letters: &[Letter],
    f: &mut dyn FnMut(&[(usize, Letter)]),
) {
    let mut cand: Vec<(usize, Letter)> = Vec::with_capacity(w);
    fn rec(
        n: usize,
        w: usize,
        start: usize,
        letters: &[Letter],
        cand: &mut Vec<(usize, Letter)>,
        f: &mut dyn FnMut(&[(usize, Letter)]),
    ) {
        if cand.len() == w {
            f(cand);
            return;
        }
        let remaining = w - cand.len();
        for qi in start..=(n.saturating_sub(remaining)) {
            for &l in letters {
                cand.push((qi, l));
                rec(n, w, qi + 1, letters, cand, f);
                cand.pop();
            }
        }
    }
    rec(n, w, 0, letters, &mut cand, f);
}
