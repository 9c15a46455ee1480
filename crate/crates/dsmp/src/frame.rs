//! Frames of discernment, DSm models and their Venn-atom element algebra.
//!
//! A frame holds `n` singleton hypotheses. The free model splits the frame
//! into `2^n - 1` Venn atoms, one per non-empty subset of singletons; an
//! atom is addressed by the bit `s - 1` of a `u128` where `s` is the
//! subset bitmask of the singletons containing it. Integrity constraints
//! (hybrid and Shafer models) force some of those atoms empty. Every
//! element of the event algebra is then an [`AtomSet`]: two set-algebra
//! expressions denote the same element exactly when their canonical atom
//! masks coincide, and union / intersection / DSm cardinality are plain
//! bit operations.

use std::fmt;

use crate::error::{Error, Result, MAX_ENUMERATION_ATOMS, MAX_SINGLETONS};

/// Names that would be ambiguous inside set-algebra expressions.
const RESERVED_NAMES: [&str; 3] = ["u", "n", "empty"];

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// An ordered frame of discernment: the singleton hypotheses under study.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    names: Vec<String>,
}

impl Frame {
    /// Builds a frame from singleton names. Names must be unique, non-empty,
    /// made of identifier characters (so they survive expression parsing)
    /// and distinct from the operator keywords `u`, `n` and `empty`.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > MAX_SINGLETONS {
            return Err(Error::FrameSize(names.len()));
        }
        for name in &names {
            if name.is_empty() {
                return Err(Error::InvalidName(name.clone(), "name is empty"));
            }
            if !name.chars().all(is_name_char) {
                return Err(Error::InvalidName(
                    name.clone(),
                    "only alphanumeric characters, `_` and `'` are allowed",
                ));
            }
            if RESERVED_NAMES.contains(&name.as_str()) {
                return Err(Error::InvalidName(name.clone(), "reserved operator keyword"));
            }
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        Ok(Frame { names })
    }

    /// Number of singletons.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a frame always holds at least one singleton
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Number of Venn atoms of the free model over this frame.
    pub fn atom_range(&self) -> usize {
        (1usize << self.names.len()) - 1
    }

    fn range_mask(&self) -> u128 {
        if self.atom_range() == 128 {
            u128::MAX
        } else {
            (1u128 << self.atom_range()) - 1
        }
    }
}

/// A set of Venn atoms: one element of the event algebra `G^Θ` (or any
/// plain region of the Venn diagram) in canonical extensional form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet {
    mask: u128,
}

impl AtomSet {
    /// The empty element `∅`.
    pub const EMPTY: AtomSet = AtomSet { mask: 0 };

    pub(crate) fn from_mask(mask: u128) -> Self {
        AtomSet { mask }
    }

    pub fn mask(self) -> u128 {
        self.mask
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    /// Set-wise containment: does `self` hold every atom of `other`?
    pub fn contains(self, other: AtomSet) -> bool {
        other.mask & !self.mask == 0
    }

    pub fn intersects(self, other: AtomSet) -> bool {
        self.mask & other.mask != 0
    }

    /// Bit positions of the atoms in this set, ascending.
    pub fn atom_bits(self) -> impl Iterator<Item = u32> {
        let mut rest = self.mask;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                Some(bit)
            }
        })
    }

    /// The atoms of this set as single-atom sets, ascending.
    pub fn atoms(self) -> impl Iterator<Item = AtomSet> {
        self.atom_bits().map(|b| AtomSet { mask: 1u128 << b })
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AtomSet({:#x})", self.mask)
    }
}

/// Which Venn atoms an atom bit spans: the subset of singleton indices
/// containing atom bit `b` is the bitmask `b + 1`.
pub(crate) fn atom_members(bit: u32) -> impl Iterator<Item = usize> {
    let subset = bit + 1;
    (0..MAX_SINGLETONS).filter(move |i| subset & (1 << i) != 0)
}

/// A frame together with the integrity constraints of a DSm model.
///
/// `empty_atoms` marks the Venn atoms forced empty: none for the free
/// model, every multi-singleton atom for Shafer's model, and anything in
/// between for hybrid models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameModel {
    frame: Frame,
    empty_atoms: u128,
    full: u128,
    singletons: Vec<AtomSet>,
}

impl FrameModel {
    /// The free DSm model: no constraint, all `2^n - 1` atoms non-empty.
    pub fn free(frame: Frame) -> FrameModel {
        Self::build(frame, 0).expect("free model cannot degenerate a singleton")
    }

    /// Shafer's model: all distinct singletons are exclusive, so every
    /// atom shared by two or more singletons is empty.
    pub fn shafer(frame: Frame) -> FrameModel {
        let empty = Self::shafer_mask(&frame);
        Self::build(frame, empty).expect("shafer model keeps every private atom")
    }

    /// A hybrid model: the atoms of `constrained_empty` are removed. The
    /// mask is typically the union of intersection elements declared empty,
    /// evaluated on the free model of the same frame.
    pub fn hybrid(frame: Frame, constrained_empty: AtomSet) -> Result<FrameModel> {
        let range = frame.range_mask();
        if constrained_empty.mask & !range != 0 {
            return Err(Error::ElementOutOfRange(constrained_empty.mask));
        }
        Self::build(frame, constrained_empty.mask)
    }

    fn shafer_mask(frame: &Frame) -> u128 {
        let mut mask = 0u128;
        for s in 1..=frame.atom_range() as u32 {
            if s.count_ones() >= 2 {
                mask |= 1u128 << (s - 1);
            }
        }
        mask
    }

    fn build(frame: Frame, empty_atoms: u128) -> Result<FrameModel> {
        let full = frame.range_mask() & !empty_atoms;
        let mut singletons = Vec::with_capacity(frame.len());
        for i in 0..frame.len() {
            let mut mask = 0u128;
            for s in 1..=frame.atom_range() as u32 {
                if s & (1 << i) != 0 {
                    mask |= 1u128 << (s - 1);
                }
            }
            let canonical = mask & full;
            if canonical == 0 {
                return Err(Error::DegenerateSingleton(frame.name(i).to_string()));
            }
            singletons.push(AtomSet::from_mask(canonical));
        }
        Ok(FrameModel {
            frame,
            empty_atoms,
            full,
            singletons,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn is_free(&self) -> bool {
        self.empty_atoms == 0
    }

    pub fn is_shafer(&self) -> bool {
        self.empty_atoms == Self::shafer_mask(&self.frame)
    }

    /// The atoms forced empty by the model's constraints.
    pub fn empty_atoms(&self) -> AtomSet {
        AtomSet::from_mask(self.empty_atoms)
    }

    /// The total ignorance `θ_1 ∪ … ∪ θ_n`: every non-empty atom.
    pub fn full_set(&self) -> AtomSet {
        AtomSet::from_mask(self.full)
    }

    /// Number of non-empty atoms (`M` in information metrics).
    pub fn atom_count(&self) -> usize {
        self.full.count_ones() as usize
    }

    /// Non-empty atoms as single-atom sets, ascending by atom bit.
    pub fn atoms(&self) -> Vec<AtomSet> {
        self.full_set().atoms().collect()
    }

    /// The canonical element for singleton `i`: all of its non-empty atoms.
    pub fn singleton(&self, i: usize) -> AtomSet {
        self.singletons[i]
    }

    pub fn singleton_by_name(&self, name: &str) -> Option<AtomSet> {
        self.frame.index_of(name).map(|i| self.singletons[i])
    }

    /// Validated entry point for raw masks coming from outside the crate.
    pub fn element_from_mask(&self, mask: u128) -> Result<AtomSet> {
        if mask & !self.frame.range_mask() != 0 {
            return Err(Error::ElementOutOfRange(mask));
        }
        Ok(self.canonicalize(AtomSet::from_mask(mask)))
    }

    /// Removes constrained-empty atoms (and anything outside the frame's
    /// atom range). Idempotent; `canonicalize(x) ⊆ x`.
    pub fn canonicalize(&self, raw: AtomSet) -> AtomSet {
        AtomSet::from_mask(raw.mask & self.full)
    }

    pub fn element_union(&self, a: AtomSet, b: AtomSet) -> AtomSet {
        AtomSet::from_mask((a.mask | b.mask) & self.full)
    }

    pub fn element_intersection(&self, a: AtomSet, b: AtomSet) -> AtomSet {
        AtomSet::from_mask(a.mask & b.mask & self.full)
    }

    /// DSm cardinal: the number of non-empty Venn atoms inside the element.
    pub fn dsm_cardinal(&self, x: AtomSet) -> u32 {
        (x.mask & self.full).count_ones()
    }

    /// Singleton indices whose element contains the given single atom.
    pub fn atom_member_indices(&self, atom_bit: u32) -> Vec<usize> {
        atom_members(atom_bit)
            .filter(|&i| i < self.frame.len())
            .collect()
    }

    /// Replaces the model by an equivalent Shafer-model frame with one new
    /// exclusive singleton per non-empty atom.
    ///
    /// Atoms private to a singleton keep its name with a `'` suffix; shared
    /// atoms get fresh primed names continuing the frame's alphabet. The
    /// returned [`Refinement`] carries the atom ↔ refined-singleton
    /// bijection used to transport assignments and map results back.
    pub fn refine(&self) -> Result<Refinement> {
        let mut atoms: Vec<u32> = self.full_set().atom_bits().collect();
        if atoms.is_empty() {
            return Err(Error::FrameSize(0));
        }
        if atoms.len() > MAX_SINGLETONS {
            return Err(Error::RefineCapacity(atoms.len()));
        }
        // order: private atoms in frame order, then shared atoms by
        // (cardinality, subset mask)
        atoms.sort_by_key(|&b| ((b + 1).count_ones(), b));
        let names = self.refined_names(&atoms);
        let refined_frame = Frame::new(names)?;
        let refined = FrameModel::shafer(refined_frame);
        Ok(Refinement {
            original: self.clone(),
            refined,
            atom_bits: atoms,
        })
    }

    fn refined_names(&self, atoms: &[u32]) -> Vec<String> {
        let mut names: Vec<String> = Vec::with_capacity(atoms.len());
        let single_char = self
            .frame
            .names()
            .iter()
            .all(|n| n.chars().count() == 1 && n.chars().all(|c| c.is_ascii_alphabetic()));
        let mut next_char = self
            .frame
            .names()
            .iter()
            .filter_map(|n| n.chars().next())
            .max()
            .map(|c| (c as u8).saturating_add(1) as char);
        let mut fallback = 1usize;
        for &bit in atoms {
            let subset = bit + 1;
            let name = if subset.count_ones() == 1 {
                let i = subset.trailing_zeros() as usize;
                format!("{}'", self.frame.name(i))
            } else {
                loop {
                    let candidate = match (single_char, next_char) {
                        (true, Some(c)) if c.is_ascii_alphabetic() => {
                            next_char = Some((c as u8 + 1) as char);
                            format!("{c}'")
                        }
                        _ => {
                            let c = format!("r{fallback}'");
                            fallback += 1;
                            c
                        }
                    };
                    if !names.contains(&candidate)
                        && self.frame.index_of(candidate.trim_end_matches('\'')).is_none()
                    {
                        break candidate;
                    }
                }
            };
            names.push(name);
        }
        names
    }

    /// All distinct non-empty elements of the event algebra — the closure
    /// of the singletons under union and intersection — sorted by
    /// (DSm cardinal, mask).
    ///
    /// Shafer models yield the full power set minus `∅` (`2^n - 1`
    /// elements); free and hybrid models yield the constrained lattice.
    pub fn enumerate_elements(&self) -> Result<Vec<AtomSet>> {
        if self.atom_count() > MAX_ENUMERATION_ATOMS {
            return Err(Error::EnumerationCapacity(self.atom_count()));
        }
        // products (intersections of singleton subsets) generate the
        // lattice under union, by distributivity
        let mut seen: Vec<u128> = Vec::new();
        for subset in 1..=self.frame.atom_range() as u32 {
            let mut acc = self.full;
            for i in 0..self.frame.len() {
                if subset & (1 << i) != 0 {
                    acc &= self.singletons[i].mask;
                }
            }
            if acc != 0 && !seen.contains(&acc) {
                seen.push(acc);
            }
        }
        let mut all: std::collections::BTreeSet<u128> = seen.iter().copied().collect();
        let mut frontier: Vec<u128> = seen;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            let snapshot: Vec<u128> = all.iter().copied().collect();
            for &a in &frontier {
                for &b in &snapshot {
                    let u = a | b;
                    if all.insert(u) {
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<AtomSet> = all.into_iter().map(AtomSet::from_mask).collect();
        out.sort_by_key(|x| (self.dsm_cardinal(*x), x.mask));
        Ok(out)
    }
}

/// The bijection produced by [`FrameModel::refine`].
#[derive(Debug, Clone)]
pub struct Refinement {
    original: FrameModel,
    refined: FrameModel,
    /// original atom bit carried by refined singleton `j`
    atom_bits: Vec<u32>,
}

impl Refinement {
    pub fn original_model(&self) -> &FrameModel {
        &self.original
    }

    pub fn refined_model(&self) -> &FrameModel {
        &self.refined
    }

    /// Number of refined singletons (= non-empty atoms of the original).
    pub fn len(&self) -> usize {
        self.atom_bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atom_bits.is_empty()
    }

    /// The original atom carried by refined singleton `j`.
    pub fn atom_of_singleton(&self, j: usize) -> AtomSet {
        AtomSet::from_mask(1u128 << self.atom_bits[j])
    }

    /// The refined singleton index carrying the given original atom bit.
    pub fn singleton_of_atom(&self, atom_bit: u32) -> Option<usize> {
        self.atom_bits.iter().position(|&b| b == atom_bit)
    }

    /// Maps an element of the original model onto the refined frame: the
    /// union of the refined singletons of its atoms.
    pub fn map_element(&self, x: AtomSet) -> AtomSet {
        let mut out = AtomSet::EMPTY;
        for bit in self.original.canonicalize(x).atom_bits() {
            let j = self
                .singleton_of_atom(bit)
                .expect("canonical atoms all have a refined singleton");
            out = self.refined.element_union(out, self.refined.singleton(j));
        }
        out
    }
}
