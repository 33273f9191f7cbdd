//! The instance catalogue: constructors for every carrier/target pair,
//! bundled with their unit series and commutativity declarations.
//!
//! Desk-scale defaults keep every law suite exhaustive in seconds:
//! alphabet 2 with word cap 2–3, 3 relation points, chain-5 intervals,
//! 2×2 heaplets, dimension-2 vectors over {0,1,2}.

use std::collections::HashMap;

use crate::algebra::{Carrier, CarrierBuilder, Element};
use crate::error::AlgebraError;
use crate::series::{direct_unit, unit_series, PowerSeries, SuiteConfig};
use crate::value::{BoolQ, TropicalQ, VectorQ};

const CARRIER_BOUND: usize = 1024;

fn guard_size(what: &str, size: usize) -> Result<(), AlgebraError> {
    if size > CARRIER_BOUND {
        Err(AlgebraError::SizeBound {
            what: what.to_string(),
            size,
            bound: CARRIER_BOUND,
        })
    } else {
        Ok(())
    }
}

const LETTERS: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];
const STATES: [char; 4] = ['p', 'q', 'r', 's'];

/// Words of length ≤ `max_len` over a `k`-letter alphabet, shortlex order,
/// with truncating concatenation: over-length products are ⊥. Unit ε.
pub fn make_language(k: usize, max_len: usize) -> Result<Carrier, AlgebraError> {
    if k == 0 || k > LETTERS.len() {
        return Err(AlgebraError::InvalidSpec(format!(
            "alphabet size {k} outside 1..={}",
            LETTERS.len()
        )));
    }
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..k as u8 {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    guard_size("language carrier", words.len())?;
    let index: HashMap<Vec<u8>, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let mut b = CarrierBuilder::new(words.len());
    for (i, x) in words.iter().enumerate() {
        for (j, y) in words.iter().enumerate() {
            if x.len() + y.len() <= max_len {
                let mut w = x.clone();
                w.extend_from_slice(y);
                b.set(Element(i as u32), Element(j as u32), Element(index[&w] as u32));
            }
        }
    }
    let labels = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "ε".to_string()
            } else {
                w.iter().map(|a| LETTERS[*a as usize]).collect()
            }
        })
        .collect();
    Ok(b.unit(Element(0)).labels(labels).build())
}

/// Ordered pairs over `n` points with endpoint-matching composition.
/// No carrier unit; the convolution unit is the diagonal predicate.
pub fn make_relation(n: usize) -> Result<Carrier, AlgebraError> {
    guard_size("relation carrier", n * n)?;
    let b = CarrierBuilder::from_fn(n * n, |x, y| {
        let (a, b1) = (x / n, x % n);
        let (b2, c) = (y / n, y % n);
        (b1 == b2).then_some(a * n + c)
    });
    let mut labels = Vec::new();
    for a in 0..n {
        for c in 0..n {
            labels.push(format!("({},{})", a + 1, c + 1));
        }
    }
    Ok(b.labels(labels).build())
}

/// Diagonal predicate for the relation carrier.
pub fn relation_diagonal(n: usize) -> impl Fn(Element) -> bool {
    move |x| x.index() / n == x.index() % n
}

/// Alternating state/label traces p₀a₁p₁… with at most `max_transitions`
/// transitions, composed by fusing the shared boundary state. The
/// convolution unit is the single-state-trace predicate.
pub fn make_trace(
    states: usize,
    labels: usize,
    max_transitions: usize,
) -> Result<Carrier, AlgebraError> {
    if states == 0 || states > STATES.len() || labels == 0 || labels > LETTERS.len() {
        return Err(AlgebraError::InvalidSpec(
            "trace alphabets outside supported range".to_string(),
        ));
    }
    // A trace with t transitions is encoded as [s0, l1, s1, ..., lt, st].
    let mut traces: Vec<Vec<u8>> = (0..states as u8).map(|s| vec![s]).collect();
    let mut layer = traces.clone();
    for _ in 0..max_transitions {
        let mut next = Vec::new();
        for t in &layer {
            for l in 0..labels as u8 {
                for s in 0..states as u8 {
                    let mut v = t.clone();
                    v.push(l);
                    v.push(s);
                    next.push(v);
                }
            }
        }
        traces.extend(next.iter().cloned());
        layer = next;
    }
    guard_size("trace carrier", traces.len())?;
    let index: HashMap<Vec<u8>, usize> = traces
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let mut b = CarrierBuilder::new(traces.len());
    for (i, x) in traces.iter().enumerate() {
        for (j, y) in traces.iter().enumerate() {
            let trans = (x.len() - 1 + y.len() - 1) / 2;
            if x[x.len() - 1] == y[0] && trans <= max_transitions {
                let mut t = x.clone();
                t.extend_from_slice(&y[1..]);
                b.set(Element(i as u32), Element(j as u32), Element(index[&t] as u32));
            }
        }
    }
    let labels = traces
        .iter()
        .map(|t| {
            t.iter()
                .enumerate()
                .map(|(i, v)| {
                    if i % 2 == 0 {
                        STATES[*v as usize]
                    } else {
                        LETTERS[*v as usize]
                    }
                })
                .collect()
        })
        .collect();
    Ok(b.labels(labels).build())
}

/// Single-state-trace predicate for the trace carrier.
pub fn trace_unit_pred(c: &Carrier) -> impl Fn(Element) -> bool + '_ {
    move |x| c.label(x).chars().count() == 1
}

/// Closed intervals [a,b] over the chain {0..n−1} with the chop
/// composition: [a,b]·[b,c] = [a,c]. The convolution unit is the
/// point-interval predicate.
pub fn make_interval_fusion(n: usize) -> Result<Carrier, AlgebraError> {
    guard_size("interval carrier", n * (n + 1) / 2)?;
    let mut ivs = Vec::new();
    for a in 0..n {
        for b in a..n {
            ivs.push((a, b));
        }
    }
    let index: HashMap<(usize, usize), usize> =
        ivs.iter().enumerate().map(|(i, iv)| (*iv, i)).collect();
    let mut bld = CarrierBuilder::new(ivs.len());
    for (i, (a, b)) in ivs.iter().enumerate() {
        for (j, (b2, c)) in ivs.iter().enumerate() {
            if b == b2 {
                bld.set(
                    Element(i as u32),
                    Element(j as u32),
                    Element(index[&(*a, *c)] as u32),
                );
            }
        }
    }
    let labels = ivs.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
    Ok(bld.labels(labels).build())
}

/// Point-interval predicate for the fusion-interval carrier.
pub fn interval_point_pred(c: &Carrier) -> impl Fn(Element) -> bool + '_ {
    move |x| {
        let l = c.label(x);
        let body = &l[1..l.len() - 1];
        let (a, b) = body.split_once(',').unwrap();
        a == b
    }
}

/// Order-convex subsets of the chain {0..n−1} (the empty interval plus
/// the nonempty [a,b]) with the fusion-free composition: x·y = x ∪ y when
/// every point of x strictly precedes every point of y and the union is
/// again an interval. ∅ is a genuine two-sided unit.
pub fn make_interval_nofusion(n: usize) -> Result<Carrier, AlgebraError> {
    guard_size("interval carrier", 1 + n * (n + 1) / 2)?;
    // Element 0 is ∅; element 1 + k enumerates nonempty [a,b].
    let mut ivs: Vec<Option<(usize, usize)>> = vec![None];
    for a in 0..n {
        for b in a..n {
            ivs.push(Some((a, b)));
        }
    }
    let index: HashMap<(usize, usize), usize> = ivs
        .iter()
        .enumerate()
        .filter_map(|(i, iv)| iv.map(|p| (p, i)))
        .collect();
    let mut bld = CarrierBuilder::new(ivs.len());
    for (i, x) in ivs.iter().enumerate() {
        for (j, y) in ivs.iter().enumerate() {
            let z = match (x, y) {
                (None, _) => Some(j),
                (_, None) => Some(i),
                (Some((a, b)), Some((c, d))) => {
                    (*c == b + 1).then(|| index[&(*a, *d)])
                }
            };
            if let Some(z) = z {
                bld.set(Element(i as u32), Element(j as u32), Element(z as u32));
            }
        }
    }
    let labels = ivs
        .iter()
        .map(|iv| match iv {
            None => "∅".to_string(),
            Some((a, b)) => format!("[{a},{b}]"),
        })
        .collect();
    Ok(bld.unit(Element(0)).labels(labels).build())
}

/// Base symbols with the diagonal composition x·y = x iff x = y; the
/// lifted space over the tropical target is the multiset quantale.
pub fn make_multiset(symbols: usize) -> Result<Carrier, AlgebraError> {
    if symbols == 0 || symbols > LETTERS.len() {
        return Err(AlgebraError::InvalidSpec(format!(
            "symbol count {symbols} outside 1..={}",
            LETTERS.len()
        )));
    }
    Ok(
        CarrierBuilder::from_fn(symbols, |x, y| (x == y).then_some(x))
            .commutative_hint(true)
            .labels((0..symbols).map(|i| LETTERS[i].to_string()).collect())
            .build(),
    )
}

/// Subsets of {1..n} with disjoint union. Unit ∅, commutative.
pub fn make_disjoint_sets(n: usize) -> Result<Carrier, AlgebraError> {
    guard_size("disjoint-sets carrier", 1 << n)?;
    let b = CarrierBuilder::from_fn(1 << n, |x, y| (x & y == 0).then_some(x | y));
    let labels = (0..1usize << n)
        .map(|m| {
            if m == 0 {
                "∅".to_string()
            } else {
                let xs: Vec<String> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", xs.join(","))
            }
        })
        .collect();
    Ok(b.unit(Element(0)).commutative_hint(true).labels(labels).build())
}

/// Heaplets: partial maps from `locations` cells into `values`, composed
/// by union on disjoint domains. Unit = empty heaplet, commutative.
pub fn make_heaplet(locations: usize, values: usize) -> Result<Carrier, AlgebraError> {
    let radix = values + 1;
    let size = radix.pow(locations as u32);
    guard_size("heaplet carrier", size)?;
    // Digit 0 = absent; digit d ≥ 1 = value d−1.
    let b = CarrierBuilder::from_fn(size, |x, y| {
        let mut out = 0;
        let mut scale = 1;
        let (mut x, mut y) = (x, y);
        for _ in 0..locations {
            let (dx, dy) = (x % radix, y % radix);
            if dx != 0 && dy != 0 {
                return None;
            }
            out += (dx + dy) * scale;
            scale *= radix;
            x /= radix;
            y /= radix;
        }
        Some(out)
    });
    let labels = (0..size)
        .map(|mut m| {
            let mut cells = Vec::new();
            for l in 0..locations {
                let d = m % radix;
                m /= radix;
                if d != 0 {
                    cells.push(format!("l{}↦{}", l + 1, d - 1));
                }
            }
            if cells.is_empty() {
                "∅".to_string()
            } else {
                format!("{{{}}}", cells.join(","))
            }
        })
        .collect();
    Ok(b.unit(Element(0)).commutative_hint(true).labels(labels).build())
}

/// Vectors over {0..cap}^dim with the separating (zero-test) sum. Unit =
/// zero vector, commutative. Pairs with the `VectorQ` target through
/// `vector_embed`.
pub fn make_vector(dim: usize, cap: u32) -> Result<Carrier, AlgebraError> {
    let radix = (cap + 1) as usize;
    let size = radix.pow(dim as u32);
    guard_size("vector carrier", size)?;
    let b = CarrierBuilder::from_fn(size, |x, y| {
        let mut out = 0;
        let mut scale = 1;
        let (mut x, mut y) = (x, y);
        for _ in 0..dim {
            let (dx, dy) = (x % radix, y % radix);
            if dx != 0 && dy != 0 {
                return None;
            }
            out += (dx + dy) * scale;
            scale *= radix;
            x /= radix;
            y /= radix;
        }
        Some(out)
    });
    let labels = (0..size)
        .map(|m| {
            let v = decode_vector(m, dim, cap);
            let parts: Vec<String> = v.iter().map(|d| d.to_string()).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    Ok(b.unit(Element(0)).commutative_hint(true).labels(labels).build())
}

fn decode_vector(mut m: usize, dim: usize, cap: u32) -> Vec<u32> {
    let radix = (cap + 1) as usize;
    let mut v = Vec::with_capacity(dim);
    for _ in 0..dim {
        v.push((m % radix) as u32);
        m /= radix;
    }
    v
}

/// Element-to-value embedding for the vector carrier/target pair.
pub fn vector_embed(dim: usize, cap: u32) -> impl Fn(Element) -> Vec<u32> {
    move |x| decode_vector(x.index(), dim, cap)
}

/// A carrier with a Boolean target, its unit series, and its declared
/// commutativity.
pub struct BoolInstance {
    pub name: String,
    pub carrier: Carrier,
    pub unit: Option<PowerSeries<BoolQ>>,
    pub commutative: bool,
}

impl BoolInstance {
    pub fn lifted_suite(&self, config: SuiteConfig) -> crate::series::LiftedSuite<'_, BoolQ> {
        crate::series::LiftedSuite::total(
            &self.carrier,
            &BoolQ,
            self.unit.clone(),
            self.commutative,
            config,
        )
    }
}

/// The multiset carrier with its tropical target.
pub struct TropInstance {
    pub name: String,
    pub carrier: Carrier,
    pub target: TropicalQ,
    pub unit: PowerSeries<TropicalQ>,
}

impl TropInstance {
    pub fn lifted_suite(&self, config: SuiteConfig) -> crate::series::LiftedSuite<'_, TropicalQ> {
        crate::series::LiftedSuite::total(
            &self.carrier,
            &self.target,
            Some(self.unit.clone()),
            true,
            config,
        )
    }
}

/// The vector carrier with its partial vector target (convolve_partial).
pub struct VectorInstance {
    pub name: String,
    pub carrier: Carrier,
    pub target: VectorQ,
    pub unit: PowerSeries<VectorQ>,
    pub dim: usize,
    pub cap: u32,
}

impl VectorInstance {
    pub fn embed(&self) -> impl Fn(Element) -> Vec<u32> {
        vector_embed(self.dim, self.cap)
    }

    pub fn lifted_suite(&self, config: SuiteConfig) -> crate::series::LiftedSuite<'_, VectorQ> {
        crate::series::LiftedSuite::partial(
            &self.carrier,
            &self.target,
            &self.embed(),
            Some(self.unit.clone()),
            true,
            config,
        )
    }
}

pub fn language_instance(k: usize, max_len: usize) -> Result<BoolInstance, AlgebraError> {
    let carrier = make_language(k, max_len)?;
    let unit = unit_series(&carrier, &BoolQ)?;
    Ok(BoolInstance {
        name: format!("language(alphabet={k},cap={max_len})"),
        carrier,
        unit: Some(unit),
        commutative: false,
    })
}

pub fn relation_instance(points: usize) -> Result<BoolInstance, AlgebraError> {
    let carrier = make_relation(points)?;
    let unit = direct_unit(&carrier, &BoolQ, relation_diagonal(points))?;
    Ok(BoolInstance {
        name: format!("relation(points={points})"),
        carrier,
        unit: Some(unit),
        commutative: false,
    })
}

pub fn trace_instance(
    states: usize,
    labels: usize,
    max_transitions: usize,
) -> Result<BoolInstance, AlgebraError> {
    let carrier = make_trace(states, labels, max_transitions)?;
    let unit = direct_unit(&carrier, &BoolQ, trace_unit_pred(&carrier))?;
    Ok(BoolInstance {
        name: format!("trace(states={states},labels={labels},cap={max_transitions})"),
        carrier,
        unit: Some(unit),
        commutative: false,
    })
}

pub fn interval_fusion_instance(chain: usize) -> Result<BoolInstance, AlgebraError> {
    let carrier = make_interval_fusion(chain)?;
    let unit = direct_unit(&carrier, &BoolQ, interval_point_pred(&carrier))?;
    Ok(BoolInstance {
        name: format!("interval_fusion(chain={chain})"),
        carrier,
        unit: Some(unit),
        commutative: false,
    })
}

pub fn interval_nofusion_instance(chain: usize) -> Result<BoolInstance, AlgebraError> {
    let carrier = make_interval_nofusion(chain)?;
    let unit = unit_series(&carrier, &BoolQ)?;
    Ok(BoolInstance {
        name: format!("interval_nofusion(chain={chain})"),
        carrier,
        unit: Some(unit),
        commutative: false,
    })
}

pub fn disjoint_sets_instance(n: usize) -> Result<BoolInstance, AlgebraError> {
    let carrier = make_disjoint_sets(n)?;
    let unit = unit_series(&carrier, &BoolQ)?;
    Ok(BoolInstance {
        name: format!("disjoint_sets(base={n})"),
        carrier,
        unit: Some(unit),
        commutative: true,
    })
}

pub fn heaplet_instance(locations: usize, values: usize) -> Result<BoolInstance, AlgebraError> {
    let carrier = make_heaplet(locations, values)?;
    let unit = unit_series(&carrier, &BoolQ)?;
    Ok(BoolInstance {
        name: format!("heaplet(locations={locations},values={values})"),
        carrier,
        unit: Some(unit),
        commutative: true,
    })
}

/// Multiset carrier with the Boolean target: the powerset functor.
pub fn powerset_instance(symbols: usize) -> Result<BoolInstance, AlgebraError> {
    let carrier = make_multiset(symbols)?;
    let unit = direct_unit(&carrier, &BoolQ, |_| true)?;
    Ok(BoolInstance {
        name: format!("powerset(symbols={symbols})"),
        carrier,
        unit: Some(unit),
        commutative: true,
    })
}

pub fn multiset_instance(symbols: usize, cap: u32) -> Result<TropInstance, AlgebraError> {
    let carrier = make_multiset(symbols)?;
    let target = TropicalQ::new(cap);
    let unit = direct_unit(&carrier, &target, |_| true)?;
    Ok(TropInstance {
        name: format!("multiset(symbols={symbols},cap={cap})"),
        carrier,
        target,
        unit,
    })
}

pub fn vector_instance(dim: usize, cap: u32) -> Result<VectorInstance, AlgebraError> {
    let carrier = make_vector(dim, cap)?;
    let target = VectorQ::new(dim, cap);
    let unit = unit_series(&carrier, &target)?;
    Ok(VectorInstance {
        name: format!("vector(dim={dim},values=0..{cap})"),
        carrier,
        target,
        unit,
        dim,
        cap,
    })
}

// --------------------------------------------------------------------------
// Instance specifications: the unit of the CLI config schema.

fn d_alphabet() -> usize {
    2
}
fn d_word_cap() -> usize {
    3
}
fn d_points() -> usize {
    3
}
fn d_matrix_dim() -> usize {
    3
}
fn d_states() -> usize {
    2
}
fn d_labels() -> usize {
    1
}
fn d_trace_cap() -> usize {
    2
}
fn d_chain() -> usize {
    5
}
fn d_symbols() -> usize {
    3
}
fn d_mult_cap() -> u32 {
    8
}
fn d_heap() -> usize {
    2
}
fn d_dim() -> usize {
    2
}
fn d_val_cap() -> u32 {
    2
}
fn d_box_chain() -> usize {
    4
}
fn d_par_dim() -> usize {
    2
}
fn d_omega_alphabet() -> usize {
    1
}
fn d_omega_cap() -> usize {
    4
}
fn d_fut_chain() -> usize {
    4
}

/// A deserializable instance description with desk-scale defaults; the
/// unit of the CLI config schema.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSpec {
    Language {
        #[serde(default = "d_alphabet")]
        alphabet: usize,
        #[serde(default = "d_word_cap")]
        cap: usize,
    },
    Relation {
        #[serde(default = "d_points")]
        points: usize,
    },
    Matrix {
        #[serde(default = "d_matrix_dim")]
        dim: usize,
        #[serde(default = "d_word_cap")]
        cap: usize,
    },
    Trace {
        #[serde(default = "d_states")]
        states: usize,
        #[serde(default = "d_labels")]
        labels: usize,
        #[serde(default = "d_trace_cap")]
        cap: usize,
    },
    IntervalFusion {
        #[serde(default = "d_chain")]
        chain: usize,
    },
    IntervalNofusion {
        #[serde(default = "d_chain")]
        chain: usize,
    },
    Multiset {
        #[serde(default = "d_symbols")]
        symbols: usize,
        #[serde(default = "d_mult_cap")]
        cap: u32,
    },
    Powerset {
        #[serde(default = "d_symbols")]
        symbols: usize,
    },
    DisjointSets {
        #[serde(default = "d_points")]
        base: usize,
    },
    Heaplet {
        #[serde(default = "d_heap")]
        locations: usize,
        #[serde(default = "d_heap")]
        values: usize,
    },
    Vector {
        #[serde(default = "d_dim")]
        dim: usize,
        #[serde(default = "d_val_cap")]
        cap: u32,
    },
    Box2d {
        #[serde(default = "d_box_chain")]
        chain: usize,
    },
    MatrixParallel {
        #[serde(default = "d_par_dim")]
        dim: usize,
    },
    InfWords {
        #[serde(default = "d_omega_alphabet")]
        alphabet: usize,
        #[serde(default = "d_omega_cap")]
        cap: usize,
    },
    FutIntervals {
        #[serde(default = "d_fut_chain")]
        chain: usize,
    },
}

impl InstanceSpec {
    /// The config-schema kind string.
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceSpec::Language { .. } => "language",
            InstanceSpec::Relation { .. } => "relation",
            InstanceSpec::Matrix { .. } => "matrix",
            InstanceSpec::Trace { .. } => "trace",
            InstanceSpec::IntervalFusion { .. } => "interval_fusion",
            InstanceSpec::IntervalNofusion { .. } => "interval_nofusion",
            InstanceSpec::Multiset { .. } => "multiset",
            InstanceSpec::Powerset { .. } => "powerset",
            InstanceSpec::DisjointSets { .. } => "disjoint_sets",
            InstanceSpec::Heaplet { .. } => "heaplet",
            InstanceSpec::Vector { .. } => "vector",
            InstanceSpec::Box2d { .. } => "box2d",
            InstanceSpec::MatrixParallel { .. } => "matrix_parallel",
            InstanceSpec::InfWords { .. } => "inf_words",
            InstanceSpec::FutIntervals { .. } => "fut_intervals",
        }
    }

    /// Human-readable identity used in reports and expected-fail matching.
    pub fn name(&self) -> String {
        match self {
            InstanceSpec::Language { alphabet, cap } => {
                format!("language(alphabet={alphabet},cap={cap})")
            }
            InstanceSpec::Relation { points } => format!("relation(points={points})"),
            InstanceSpec::Matrix { dim, cap } => format!("matrix(dim={dim},cap={cap})"),
            InstanceSpec::Trace { states, labels, cap } => {
                format!("trace(states={states},labels={labels},cap={cap})")
            }
            InstanceSpec::IntervalFusion { chain } => format!("interval_fusion(chain={chain})"),
            InstanceSpec::IntervalNofusion { chain } => {
                format!("interval_nofusion(chain={chain})")
            }
            InstanceSpec::Multiset { symbols, cap } => {
                format!("multiset(symbols={symbols},cap={cap})")
            }
            InstanceSpec::Powerset { symbols } => format!("powerset(symbols={symbols})"),
            InstanceSpec::DisjointSets { base } => format!("disjoint_sets(base={base})"),
            InstanceSpec::Heaplet { locations, values } => {
                format!("heaplet(locations={locations},values={values})")
            }
            InstanceSpec::Vector { dim, cap } => format!("vector(dim={dim},values=0..{cap})"),
            InstanceSpec::Box2d { chain } => format!("box2d(chain={chain})"),
            InstanceSpec::MatrixParallel { dim } => format!("matrix_parallel(dim={dim})"),
            InstanceSpec::InfWords { alphabet, cap } => {
                format!("inf_words(alphabet={alphabet},cap={cap})")
            }
            InstanceSpec::FutIntervals { chain } => format!("fut_intervals(chain={chain})"),
        }
    }
}
