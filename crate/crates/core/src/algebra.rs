//! Finite partial semigroups and monoids.
//!
//! A [`Carrier`] is a finite enumerated set with a partial binary
//! composition stored as a dense table. Undefined composition (⊥) is a
//! distinguished marker outside the carrier, never an element. Splittings
//! `x = y·z` are precomputed as an inverted index at construction, since
//! convolution is the hot loop.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::AlgebraError;
use crate::report::{CheckMode, LawReport};

/// Element of a carrier, identified by its position in the enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub u32);

impl Element {
    /// Position in the carrier's enumeration.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Result of a partial composition: an element, or ⊥.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartialProduct {
    Defined(Element),
    Undefined,
}

impl PartialProduct {
    pub fn is_defined(self) -> bool {
        matches!(self, PartialProduct::Defined(_))
    }

    pub fn element(self) -> Option<Element> {
        match self {
            PartialProduct::Defined(e) => Some(e),
            PartialProduct::Undefined => None,
        }
    }
}

/// Boundedness classification used by futuristic carriers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundedness {
    Bounded,
    Unbounded,
}

static NEXT_CARRIER_ID: AtomicU64 = AtomicU64::new(1);

/// Finite partial semigroup or monoid with a dense composition table.
#[derive(Debug, Clone)]
pub struct Carrier {
    id: u64,
    size: usize,
    /// Row-major table: entry `x.index() * size + y.index()`.
    table: Vec<PartialProduct>,
    unit: Option<Element>,
    commutative_hint: bool,
    labels: Option<Vec<String>>,
    classification: Option<Vec<Boundedness>>,
    /// Inverted index: `splittings[x]` lists all `(y, z)` with `y·z = x`,
    /// in lexicographic order of `(y.index, z.index)`.
    splittings: Vec<Vec<(Element, Element)>>,
}

impl Carrier {
    /// Identifier distinguishing carriers for mixed-carrier detection.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Iterator over all elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.size as u32).map(Element)
    }

    /// Table lookup for `x·y`.
    pub fn compose(&self, x: Element, y: Element) -> PartialProduct {
        self.table[x.index() * self.size + y.index()]
    }

    pub fn unit(&self) -> Option<Element> {
        self.unit
    }

    pub fn commutative_hint(&self) -> bool {
        self.commutative_hint
    }

    /// All pairs `(y, z)` with `y·z = x`, lexicographic by indices.
    pub fn splittings(&self, x: Element) -> &[(Element, Element)] {
        &self.splittings[x.index()]
    }

    /// Display label of an element (falls back to the index).
    pub fn label(&self, x: Element) -> String {
        match &self.labels {
            Some(ls) => ls[x.index()].clone(),
            None => format!("e{}", x.index()),
        }
    }

    /// Boundedness of an element; `None` when the carrier is unclassified.
    pub fn classification(&self, x: Element) -> Option<Boundedness> {
        self.classification.as_ref().map(|c| c[x.index()])
    }

    /// Whether a bounded/unbounded classification is present.
    pub fn is_classified(&self) -> bool {
        self.classification.is_some()
    }

    /// Whether any element is classified unbounded.
    pub fn has_unbounded(&self) -> bool {
        self.classification
            .as_ref()
            .is_some_and(|c| c.iter().any(|b| *b == Boundedness::Unbounded))
    }

    /// The opposite carrier: `x ⊙ y = y·x`. Unit and hints carry over.
    pub fn opposite(&self) -> Carrier {
        let mut b = CarrierBuilder::new(self.size);
        for x in self.elements() {
            for y in self.elements() {
                if let PartialProduct::Defined(z) = self.compose(y, x) {
                    b.set(x, y, z);
                }
            }
        }
        if let Some(u) = self.unit {
            b = b.unit(u);
        }
        if let Some(ls) = &self.labels {
            b = b.labels(ls.clone());
        }
        b = b.commutative_hint(self.commutative_hint);
        if let Some(cl) = &self.classification {
            b = b.classification(cl.clone());
        }
        b.build()
    }
}

/// Builder for [`Carrier`]; all entries default to ⊥.
pub struct CarrierBuilder {
    size: usize,
    table: Vec<PartialProduct>,
    unit: Option<Element>,
    commutative_hint: bool,
    labels: Option<Vec<String>>,
    classification: Option<Vec<Boundedness>>,
}

impl CarrierBuilder {
    pub fn new(size: usize) -> Self {
        CarrierBuilder {
            size,
            table: vec![PartialProduct::Undefined; size * size],
            unit: None,
            commutative_hint: false,
            labels: None,
            classification: None,
        }
    }

    /// Define `x·y = z`.
    pub fn set(&mut self, x: Element, y: Element, z: Element) {
        self.table[x.index() * self.size + y.index()] = PartialProduct::Defined(z);
    }

    /// Populate the whole table from a function returning `Some(index)` or `None`.
    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> Option<usize>) -> Self {
        let mut b = CarrierBuilder::new(size);
        for x in 0..size {
            for y in 0..size {
                if let Some(z) = f(x, y) {
                    b.set(Element(x as u32), Element(y as u32), Element(z as u32));
                }
            }
        }
        b
    }

    pub fn unit(mut self, u: Element) -> Self {
        self.unit = Some(u);
        self
    }

    pub fn commutative_hint(mut self, is_comm: bool) -> Self {
        self.commutative_hint = is_comm;
        self
    }

    pub fn labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.size);
        self.labels = Some(labels);
        self
    }

    pub fn classification(mut self, classes: Vec<Boundedness>) -> Self {
        assert_eq!(classes.len(), self.size);
        self.classification = Some(classes);
        self
    }

    /// Freeze the table and precompute the splittings index.
    pub fn build(self) -> Carrier {
        let mut splittings = vec![Vec::new(); self.size];
        for x in 0..self.size {
            for y in 0..self.size {
                if let PartialProduct::Defined(z) = self.table[x * self.size + y] {
                    splittings[z.index()].push((Element(x as u32), Element(y as u32)));
                }
            }
        }
        // The scan order above is already lexicographic by (y.index, z.index).
        Carrier {
            id: NEXT_CARRIER_ID.fetch_add(1, Ordering::Relaxed),
            size: self.size,
            table: self.table,
            unit: self.unit,
            commutative_hint: self.commutative_hint,
            labels: self.labels,
            classification: self.classification,
            splittings,
        }
    }
}

/// Corrupt one table entry, for negative controls: sets `x·y = z`.
///
/// Returns a rebuilt carrier (fresh id, splittings recomputed).
pub fn corrupt_entry(c: &Carrier, x: usize, y: usize, z: usize) -> Result<Carrier, AlgebraError> {
    if x >= c.size || y >= c.size || z >= c.size {
        return Err(AlgebraError::InvalidSpec(format!(
            "corrupt entry ({x},{y},{z}) out of range for carrier of size {}",
            c.size
        )));
    }
    let mut b = CarrierBuilder::new(c.size);
    for a in c.elements() {
        for bb in c.elements() {
            if let PartialProduct::Defined(p) = c.compose(a, bb) {
                b.set(a, bb, p);
            }
        }
    }
    b.set(Element(x as u32), Element(y as u32), Element(z as u32));
    if let Some(u) = c.unit() {
        b = b.unit(u);
    }
    b = b.commutative_hint(c.commutative_hint());
    let labels: Vec<String> = c.elements().map(|e| c.label(e)).collect();
    b = b.labels(labels);
    Ok(b.build())
}

fn fmt_product(c: &Carrier, p: PartialProduct) -> String {
    match p {
        PartialProduct::Defined(e) => c.label(e),
        PartialProduct::Undefined => "⊥".to_string(),
    }
}

/// Exhaustively check associativity, unit laws (if a unit is present) and
/// commutativity (if hinted). One report per applicable law; the first
/// witness is recorded on failure.
pub fn check_carrier_laws(c: &Carrier) -> Vec<LawReport> {
    let mut reports = Vec::new();

    // Associativity, Kleisli sense: ⊥ absorbs.
    let mut tuples = 0u64;
    let mut witness: Option<Vec<String>> = None;
    'assoc: for x in c.elements() {
        for y in c.elements() {
            let xy = c.compose(x, y);
            for z in c.elements() {
                tuples += 1;
                let lhs = match xy {
                    PartialProduct::Defined(p) => c.compose(p, z),
                    PartialProduct::Undefined => PartialProduct::Undefined,
                };
                let rhs = match c.compose(y, z) {
                    PartialProduct::Defined(q) => c.compose(x, q),
                    PartialProduct::Undefined => PartialProduct::Undefined,
                };
                if lhs != rhs {
                    witness = Some(vec![
                        format!("x={}", c.label(x)),
                        format!("y={}", c.label(y)),
                        format!("z={}", c.label(z)),
                        format!("(x·y)·z={}", fmt_product(c, lhs)),
                        format!("x·(y·z)={}", fmt_product(c, rhs)),
                    ]);
                    break 'assoc;
                }
            }
        }
    }
    reports.push(match witness {
        None => LawReport::pass("carrier-associativity", tuples, CheckMode::Exhaustive),
        Some(w) => LawReport::fail("carrier-associativity", tuples, CheckMode::Exhaustive, w),
    });

    // Unit laws.
    if let Some(u) = c.unit() {
        let mut tuples = 0u64;
        let mut witness: Option<Vec<String>> = None;
        for x in c.elements() {
            tuples += 1;
            let left = c.compose(u, x);
            let right = c.compose(x, u);
            if left != PartialProduct::Defined(x) || right != PartialProduct::Defined(x) {
                witness = Some(vec![
                    format!("x={}", c.label(x)),
                    format!("1·x={}", fmt_product(c, left)),
                    format!("x·1={}", fmt_product(c, right)),
                ]);
                break;
            }
        }
        reports.push(match witness {
            None => LawReport::pass("carrier-unit", tuples, CheckMode::Exhaustive),
            Some(w) => LawReport::fail("carrier-unit", tuples, CheckMode::Exhaustive, w),
        });
    }

    // Commutativity.
    if c.commutative_hint() {
        let mut tuples = 0u64;
        let mut witness: Option<Vec<String>> = None;
        'comm: for x in c.elements() {
            for y in c.elements() {
                tuples += 1;
                if c.compose(x, y) != c.compose(y, x) {
                    witness = Some(vec![
                        format!("x={}", c.label(x)),
                        format!("y={}", c.label(y)),
                        format!("x·y={}", fmt_product(c, c.compose(x, y))),
                        format!("y·x={}", fmt_product(c, c.compose(y, x))),
                    ]);
                    break 'comm;
                }
            }
        }
        reports.push(match witness {
            None => LawReport::pass("carrier-commutativity", tuples, CheckMode::Exhaustive),
            Some(w) => LawReport::fail("carrier-commutativity", tuples, CheckMode::Exhaustive, w),
        });
    }

    // Futuristic structure, when classified.
    if c.is_classified() {
        let mut tuples = 0u64;
        let mut witness: Option<Vec<String>> = None;
        'fut: for x in c.elements() {
            for y in c.elements() {
                tuples += 1;
                let p = c.compose(x, y);
                if c.classification(x) == Some(Boundedness::Unbounded) && p.is_defined() {
                    witness = Some(vec![
                        format!("x={} (unbounded)", c.label(x)),
                        format!("y={}", c.label(y)),
                        format!("x·y={}", fmt_product(c, p)),
                    ]);
                    break 'fut;
                }
                if let PartialProduct::Defined(z) = p {
                    if c.classification(z) == Some(Boundedness::Bounded)
                        && c.classification(x) == Some(Boundedness::Unbounded)
                    {
                        witness = Some(vec![
                            format!("x={} (unbounded)", c.label(x)),
                            format!("y={}", c.label(y)),
                            format!("x·y={} (bounded)", c.label(z)),
                        ]);
                        break 'fut;
                    }
                }
            }
        }
        reports.push(match witness {
            None => LawReport::pass("carrier-futuristic-structure", tuples, CheckMode::Exhaustive),
            Some(w) => LawReport::fail(
                "carrier-futuristic-structure",
                tuples,
                CheckMode::Exhaustive,
                w,
            ),
        });
    }

    reports
}

/// Exhaustively verify that `splittings` and `compose` agree:
/// `(y,z) ∈ splittings(x)` iff `y·z = x`. Intended for carriers of
/// moderate size (≤ a few hundred elements).
pub fn splittings_agree(c: &Carrier) -> bool {
    for x in c.elements() {
        for &(y, z) in c.splittings(x) {
            if c.compose(y, z) != PartialProduct::Defined(x) {
                return false;
            }
        }
    }
    let listed: usize = c.elements().map(|x| c.splittings(x).len()).sum();
    let defined = c
        .elements()
        .flat_map(|y| c.elements().map(move |z| (y, z)))
        .filter(|&(y, z)| c.compose(y, z).is_defined())
        .count();
    listed == defined
}
