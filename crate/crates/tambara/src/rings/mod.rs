//! Exact coefficient rings: modular rings, Galois fields, function rings,
//! products, table-presented rings, subrings, quotients, and Burnside rings.
//!
//! Every ring except the Burnside ring is enumerable; enumeration order is
//! fixed per kind so element indices are stable. Operations that scan a ring
//! (idempotents, hom search) take a cap; the default is
//! [`DEFAULT_ENUM_CAP`] = 4096, and callers that genuinely need a bigger
//! scan (the classification pipeline) pass their own.

pub mod burnside;
pub mod galois;

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
pub use burnside::BurnsideRing;
pub use galois::GaloisField;

pub const DEFAULT_ENUM_CAP: u64 = 4096;

/// A ring element. Which variant is valid depends on the ring kind.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Elt {
    /// Residue (modular rings) or element index (table rings).
    Int(i64),
    /// GF(p^k) coefficient vector, little-endian.
    Poly(Vec<u64>),
    /// Function-ring or product-ring components.
    Tuple(Vec<Elt>),
    /// Burnside-ring coefficients over the subgroup classes.
    IntVec(Vec<i64>),
}

impl fmt::Display for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elt::Int(v) => write!(f, "{v}"),
            Elt::Poly(cs) => {
                write!(f, "[")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
            Elt::Tuple(es) => {
                write!(f, "(")?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            Elt::IntVec(cs) => {
                write!(f, "⟨")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "⟩")
            }
        }
    }
}

/// A finite commutative ring presented by explicit addition and
/// multiplication tables over element indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRing {
    pub n: usize,
    pub add: Vec<usize>,
    pub mul: Vec<usize>,
    pub neg: Vec<usize>,
    pub zero: usize,
    pub one: usize,
}

impl TableRing {
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.add.len() != n * n || self.mul.len() != n * n || self.neg.len() != n {
            return Err(Error::Structure("table ring arrays have wrong size".into()));
        }
        let ok = |v: usize| v < n;
        if !self.add.iter().chain(self.mul.iter()).all(|&v| ok(v))
            || !self.neg.iter().all(|&v| ok(v))
            || !ok(self.zero)
            || !ok(self.one)
        {
            return Err(Error::Structure("table ring entry out of range".into()));
        }
        for a in 0..n {
            if self.add[a * n + self.zero] != a
                || self.mul[a * n + self.one] != a
                || self.add[a * n + self.neg[a]] != self.zero
            {
                return Err(Error::Structure("table ring unit/neg axioms fail".into()));
            }
            for b in 0..n {
                if self.add[a * n + b] != self.add[b * n + a]
                    || self.mul[a * n + b] != self.mul[b * n + a]
                {
                    return Err(Error::Structure("table ring not commutative".into()));
                }
                for c in 0..n {
                    let ab_c = self.add[self.add[a * n + b] * n + c];
                    let a_bc = self.add[a * n + self.add[b * n + c]];
                    let mab_c = self.mul[self.mul[a * n + b] * n + c];
                    let ma_bc = self.mul[a * n + self.mul[b * n + c]];
                    let dist = self.mul[a * n + self.add[b * n + c]];
                    let dist2 = self.add[self.mul[a * n + b] * n + self.mul[a * n + c]];
                    if ab_c != a_bc || mab_c != ma_bc || dist != dist2 {
                        return Err(Error::Structure("table ring axioms fail".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Exact finite commutative ring (plus the non-enumerable Burnside ring).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ring {
    /// ℤ/n for n ≥ 1 (n = 1 is the zero ring).
    Modular(u64),
    Galois(GaloisField),
    /// Fun(X, R) for an index set of the given size.
    Function { size: usize, base: Box<Ring> },
    Product(Vec<Ring>),
    Table(Arc<TableRing>),
    /// Unital subring of an enumerable base, as an explicit element list
    /// (in base enumeration order).
    Subring {
        base: Box<Ring>,
        elements: Arc<Vec<Elt>>,
        index: Arc<BTreeMap<Elt, u64>>,
    },
    /// Quotient of an enumerable base by an ideal, with canonical coset
    /// representatives (least base index in each coset).
    Quotient {
        base: Box<Ring>,
        reps: Arc<Vec<Elt>>,
        /// base element → its canonical representative
        proj: Arc<BTreeMap<Elt, Elt>>,
    },
    /// The same ring with opaque integer labels: element i is base element
    /// `perm[i]` in base enumeration order. Operations are delegated, so no
    /// tables are materialized.
    Relabeled { base: Box<Ring>, perm: Arc<Perm> },
    Burnside(Arc<BurnsideRing>),
}

/// A permutation of enumeration indices with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perm {
    pub fwd: Vec<u64>,
    pub inv: Vec<u64>,
}

impl Perm {
    pub fn new(fwd: Vec<u64>) -> Perm {
        let mut inv = vec![0u64; fwd.len()];
        for (i, &f) in fwd.iter().enumerate() {
            inv[f as usize] = i as u64;
        }
        Perm { fwd, inv }
    }
}

impl Ring {
    pub fn zero_ring() -> Ring {
        Ring::Modular(1)
    }

    pub fn gf(p: u64, k: usize) -> Result<Ring> {
        Ok(Ring::Galois(GaloisField::new(p, k)?))
    }

    pub fn subring(base: Ring, elements: Vec<Elt>) -> Ring {
        let index: BTreeMap<Elt, u64> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u64))
            .collect();
        Ring::Subring {
            base: Box::new(base),
            elements: Arc::new(elements),
            index: Arc::new(index),
        }
    }

    /// Quotient of an enumerable ring by a (plain ring) ideal given as the
    /// full set of its elements.
    pub fn quotient(base: Ring, ideal: &BTreeSet<Elt>) -> Result<Ring> {
        let elems = base.enumerate()?;
        if !ideal.contains(&base.zero()) {
            return Err(Error::Structure("ideal must contain zero".into()));
        }
        let mut proj: BTreeMap<Elt, Elt> = BTreeMap::new();
        let mut reps: Vec<Elt> = Vec::new();
        for e in &elems {
            if proj.contains_key(e) {
                continue;
            }
            // Coset e + I; representative is the first in enumeration order.
            reps.push(e.clone());
            for a in ideal {
                let member = base.add(e, a);
                proj.insert(member, e.clone());
            }
            if !proj.contains_key(e) {
                return Err(Error::Structure("ideal not closed under negation?".into()));
            }
        }
        if reps.len() * ideal.len() != elems.len() {
            return Err(Error::Structure(
                "ideal is not an additive subgroup (cosets overlap)".into(),
            ));
        }
        Ok(Ring::Quotient {
            base: Box::new(base),
            reps: Arc::new(reps),
            proj: Arc::new(proj),
        })
    }

    pub fn size(&self) -> Option<u64> {
        match self {
            Ring::Modular(n) => Some(*n),
            Ring::Galois(f) => Some(f.size()),
            Ring::Function { size, base } => base.size().map(|b| b.pow(*size as u32)),
            Ring::Product(fs) => fs.iter().map(|f| f.size()).product(),
            Ring::Table(t) => Some(t.n as u64),
            Ring::Subring { elements, .. } => Some(elements.len() as u64),
            Ring::Quotient { reps, .. } => Some(reps.len() as u64),
            Ring::Relabeled { base, .. } => base.size(),
            Ring::Burnside(_) => None,
        }
    }

    pub fn is_enumerable(&self) -> bool {
        self.size().is_some()
    }

    pub fn zero(&self) -> Elt {
        match self {
            Ring::Modular(_) => Elt::Int(0),
            Ring::Galois(f) => Elt::Poly(f.zero()),
            Ring::Function { size, base } => Elt::Tuple(vec![base.zero(); *size]),
            Ring::Product(fs) => Elt::Tuple(fs.iter().map(|f| f.zero()).collect()),
            Ring::Table(t) => Elt::Int(t.zero as i64),
            Ring::Subring { base, .. } => base.zero(),
            Ring::Quotient { base, proj, .. } => proj[&base.zero()].clone(),
            Ring::Relabeled { base, perm } => {
                Elt::Int(perm.inv[base.index_of(&base.zero()).unwrap() as usize] as i64)
            }
            Ring::Burnside(b) => b.zero(),
        }
    }

    pub fn one(&self) -> Elt {
        match self {
            Ring::Modular(n) => Elt::Int(if *n == 1 { 0 } else { 1 }),
            Ring::Galois(f) => Elt::Poly(f.one()),
            Ring::Function { size, base } => Elt::Tuple(vec![base.one(); *size]),
            Ring::Product(fs) => Elt::Tuple(fs.iter().map(|f| f.one()).collect()),
            Ring::Table(t) => Elt::Int(t.one as i64),
            Ring::Subring { base, .. } => base.one(),
            Ring::Quotient { base, proj, .. } => proj[&base.one()].clone(),
            Ring::Relabeled { base, perm } => {
                Elt::Int(perm.inv[base.index_of(&base.one()).unwrap() as usize] as i64)
            }
            Ring::Burnside(b) => b.one(),
        }
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        match (self, a, b) {
            (Ring::Modular(n), Elt::Int(x), Elt::Int(y)) => {
                Elt::Int((x + y).rem_euclid(*n as i64))
            }
            (Ring::Galois(f), Elt::Poly(x), Elt::Poly(y)) => Elt::Poly(f.add(x, y)),
            (Ring::Function { base, .. }, Elt::Tuple(xs), Elt::Tuple(ys)) => Elt::Tuple(
                xs.iter().zip(ys.iter()).map(|(x, y)| base.add(x, y)).collect(),
            ),
            (Ring::Product(fs), Elt::Tuple(xs), Elt::Tuple(ys)) => Elt::Tuple(
                fs.iter()
                    .zip(xs.iter().zip(ys.iter()))
                    .map(|(f, (x, y))| f.add(x, y))
                    .collect(),
            ),
            (Ring::Table(t), Elt::Int(x), Elt::Int(y)) => {
                Elt::Int(t.add[*x as usize * t.n + *y as usize] as i64)
            }
            (Ring::Subring { base, .. }, _, _) => base.add(a, b),
            (Ring::Quotient { base, proj, .. }, _, _) => proj[&base.add(a, b)].clone(),
            (Ring::Relabeled { base, perm }, Elt::Int(x), Elt::Int(y)) => {
                let ba = base.elt_at(perm.fwd[*x as usize]);
                let bb = base.elt_at(perm.fwd[*y as usize]);
                Elt::Int(perm.inv[base.index_of(&base.add(&ba, &bb)).unwrap() as usize] as i64)
            }
            (Ring::Burnside(r), Elt::IntVec(x), Elt::IntVec(y)) => r.add(x, y),
            _ => panic!("element does not belong to ring"),
        }
    }

    pub fn neg(&self, a: &Elt) -> Elt {
        match (self, a) {
            (Ring::Modular(n), Elt::Int(x)) => Elt::Int((-x).rem_euclid(*n as i64)),
            (Ring::Galois(f), Elt::Poly(x)) => Elt::Poly(f.neg(x)),
            (Ring::Function { base, .. }, Elt::Tuple(xs)) => {
                Elt::Tuple(xs.iter().map(|x| base.neg(x)).collect())
            }
            (Ring::Product(fs), Elt::Tuple(xs)) => Elt::Tuple(
                fs.iter().zip(xs.iter()).map(|(f, x)| f.neg(x)).collect(),
            ),
            (Ring::Table(t), Elt::Int(x)) => Elt::Int(t.neg[*x as usize] as i64),
            (Ring::Subring { base, .. }, _) => base.neg(a),
            (Ring::Quotient { base, proj, .. }, _) => proj[&base.neg(a)].clone(),
            (Ring::Relabeled { base, perm }, Elt::Int(x)) => {
                let ba = base.elt_at(perm.fwd[*x as usize]);
                Elt::Int(perm.inv[base.index_of(&base.neg(&ba)).unwrap() as usize] as i64)
            }
            (Ring::Burnside(r), Elt::IntVec(x)) => r.neg(x),
            _ => panic!("element does not belong to ring"),
        }
    }

    pub fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        match (self, a, b) {
            (Ring::Modular(n), Elt::Int(x), Elt::Int(y)) => {
                Elt::Int((x * y).rem_euclid(*n as i64))
            }
            (Ring::Galois(f), Elt::Poly(x), Elt::Poly(y)) => Elt::Poly(f.mul(x, y)),
            (Ring::Function { base, .. }, Elt::Tuple(xs), Elt::Tuple(ys)) => Elt::Tuple(
                xs.iter().zip(ys.iter()).map(|(x, y)| base.mul(x, y)).collect(),
            ),
            (Ring::Product(fs), Elt::Tuple(xs), Elt::Tuple(ys)) => Elt::Tuple(
                fs.iter()
                    .zip(xs.iter().zip(ys.iter()))
                    .map(|(f, (x, y))| f.mul(x, y))
                    .collect(),
            ),
            (Ring::Table(t), Elt::Int(x), Elt::Int(y)) => {
                Elt::Int(t.mul[*x as usize * t.n + *y as usize] as i64)
            }
            (Ring::Subring { base, .. }, _, _) => base.mul(a, b),
            (Ring::Quotient { base, proj, .. }, _, _) => proj[&base.mul(a, b)].clone(),
            (Ring::Relabeled { base, perm }, Elt::Int(x), Elt::Int(y)) => {
                let ba = base.elt_at(perm.fwd[*x as usize]);
                let bb = base.elt_at(perm.fwd[*y as usize]);
                Elt::Int(perm.inv[base.index_of(&base.mul(&ba, &bb)).unwrap() as usize] as i64)
            }
            (Ring::Burnside(r), Elt::IntVec(x), Elt::IntVec(y)) => r.mul(x, y),
            _ => panic!("element does not belong to ring"),
        }
    }

    pub fn pow(&self, a: &Elt, n: usize) -> Elt {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// n·1.
    pub fn from_int(&self, n: i64) -> Elt {
        match self {
            Ring::Modular(m) => Elt::Int(n.rem_euclid(*m as i64)),
            Ring::Galois(f) => Elt::Poly(f.from_int(n)),
            Ring::Function { size, base } => Elt::Tuple(vec![base.from_int(n); *size]),
            Ring::Product(fs) => Elt::Tuple(fs.iter().map(|f| f.from_int(n)).collect()),
            _ => {
                // Generic path: repeated addition of ±1.
                let one = self.one();
                let step = if n >= 0 { one } else { self.neg(&one) };
                let mut acc = self.zero();
                for _ in 0..n.unsigned_abs() {
                    acc = self.add(&acc, &step);
                }
                acc
            }
        }
    }

    pub fn is_zero(&self, a: &Elt) -> bool {
        *a == self.zero()
    }

    pub fn elt_at(&self, idx: u64) -> Elt {
        match self {
            Ring::Modular(_) => Elt::Int(idx as i64),
            Ring::Galois(f) => Elt::Poly(f.elt_at(idx)),
            Ring::Function { size, base } => {
                let b = base.size().expect("function base enumerable");
                let mut rest = idx;
                let mut comps = Vec::with_capacity(*size);
                for _ in 0..*size {
                    comps.push(base.elt_at(rest % b));
                    rest /= b;
                }
                Elt::Tuple(comps)
            }
            Ring::Product(fs) => {
                let mut rest = idx;
                let mut comps = Vec::with_capacity(fs.len());
                for f in fs {
                    let b = f.size().expect("product factor enumerable");
                    comps.push(f.elt_at(rest % b));
                    rest /= b;
                }
                Elt::Tuple(comps)
            }
            Ring::Table(_) => Elt::Int(idx as i64),
            Ring::Subring { elements, .. } => elements[idx as usize].clone(),
            Ring::Quotient { reps, .. } => reps[idx as usize].clone(),
            Ring::Relabeled { .. } => Elt::Int(idx as i64),
            Ring::Burnside(_) => panic!("Burnside ring is not enumerable"),
        }
    }

    pub fn index_of(&self, a: &Elt) -> Result<u64> {
        match (self, a) {
            (Ring::Modular(_), Elt::Int(v)) => Ok(*v as u64),
            (Ring::Galois(f), Elt::Poly(p)) => Ok(f.index_of(p)),
            (Ring::Function { base, .. }, Elt::Tuple(xs)) => {
                let b = base.size().ok_or_else(|| {
                    Error::NotEnumerable("function base not enumerable".into())
                })?;
                let mut idx = 0u64;
                for x in xs.iter().rev() {
                    idx = idx * b + base.index_of(x)?;
                }
                Ok(idx)
            }
            (Ring::Product(fs), Elt::Tuple(xs)) => {
                let mut idx = 0u64;
                for (f, x) in fs.iter().zip(xs.iter()).rev() {
                    let b = f
                        .size()
                        .ok_or_else(|| Error::NotEnumerable("product factor".into()))?;
                    idx = idx * b + f.index_of(x)?;
                }
                Ok(idx)
            }
            (Ring::Table(_), Elt::Int(v)) => Ok(*v as u64),
            (Ring::Subring { index, .. }, _) => index
                .get(a)
                .copied()
                .ok_or_else(|| Error::Mismatch(format!("{a} not in subring"))),
            (Ring::Quotient { proj, reps, .. }, _) => {
                let rep = proj
                    .get(a)
                    .ok_or_else(|| Error::Mismatch(format!("{a} not in quotient base")))?;
                Ok(reps.iter().position(|r| r == rep).unwrap() as u64)
            }
            (Ring::Relabeled { base, .. }, Elt::Int(v)) => {
                if (*v as u64) < base.size().unwrap_or(0) && *v >= 0 {
                    Ok(*v as u64)
                } else {
                    Err(Error::Mismatch(format!("{a} out of range")))
                }
            }
            (Ring::Burnside(_), _) => Err(Error::NotEnumerable("Burnside ring".into())),
            _ => Err(Error::Mismatch(format!("{a} not an element of this ring"))),
        }
    }

    pub fn enumerate(&self) -> Result<Vec<Elt>> {
        let n = self
            .size()
            .ok_or_else(|| Error::NotEnumerable("Burnside ring".into()))?;
        Ok((0..n).map(|i| self.elt_at(i)).collect())
    }

    pub fn contains(&self, a: &Elt) -> bool {
        match self {
            Ring::Burnside(b) => matches!(a, Elt::IntVec(v) if v.len() == b.num_classes()),
            _ => self.index_of(a).is_ok(),
        }
    }

    /// All idempotents e² = e, by exhaustive scan over at most `cap`
    /// elements.
    pub fn idempotents_with_cap(&self, cap: u64) -> Result<Vec<Elt>> {
        let n = self
            .size()
            .ok_or_else(|| Error::NotEnumerable("idempotents of Burnside ring".into()))?;
        if n > cap {
            return Err(Error::CapExceeded(format!(
                "idempotent scan over {n} elements exceeds cap {cap}"
            )));
        }
        let mut out = Vec::new();
        for i in 0..n {
            let e = self.elt_at(i);
            if self.mul(&e, &e) == e {
                out.push(e);
            }
        }
        Ok(out)
    }

    pub fn idempotents(&self) -> Result<Vec<Elt>> {
        self.idempotents_with_cap(DEFAULT_ENUM_CAP)
    }

    pub fn is_unit(&self, a: &Elt) -> Result<bool> {
        let one = self.one();
        Ok(self
            .enumerate()?
            .iter()
            .any(|b| self.mul(a, b) == one))
    }

    /// Finite commutative ring is a field iff it has ≥ 2 elements and no
    /// zero divisors.
    pub fn is_field(&self) -> Result<bool> {
        let elems = self.enumerate()?;
        if elems.len() < 2 {
            return Ok(false);
        }
        let zero = self.zero();
        for a in &elems {
            if *a == zero {
                continue;
            }
            for b in &elems {
                if *b != zero && self.mul(a, b) == zero {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Exhaustive commutative-ring axiom check for enumerable rings.
    pub fn check_axioms(&self, cap: u64) -> Result<()> {
        let n = self
            .size()
            .ok_or_else(|| Error::NotEnumerable("axiom scan".into()))?;
        if n > cap {
            return Err(Error::CapExceeded(format!("axiom scan over {n} elements")));
        }
        let elems = self.enumerate()?;
        let zero = self.zero();
        let one = self.one();
        for a in &elems {
            if self.add(a, &zero) != *a || self.mul(a, &one) != *a {
                return Err(Error::Structure(format!("unit axioms fail at {a}")));
            }
            if !self.is_zero(&self.add(a, &self.neg(a))) {
                return Err(Error::Structure(format!("negation fails at {a}")));
            }
            for b in &elems {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::Structure("commutativity fails".into()));
                }
                for c in &elems {
                    if self.add(&self.add(a, b), c) != self.add(a, &self.add(b, c))
                        || self.mul(&self.mul(a, b), c) != self.mul(a, &self.mul(b, c))
                        || self.mul(a, &self.add(b, c))
                            != self.add(&self.mul(a, b), &self.mul(a, c))
                    {
                        return Err(Error::Structure("associativity/distributivity fails".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// A short human-readable kind tag.
    pub fn describe(&self) -> String {
        match self {
            Ring::Modular(n) => format!("Z/{n}"),
            Ring::Galois(f) => format!("GF({}^{})", f.p, f.k),
            Ring::Function { size, base } => format!("Fun({size}, {})", base.describe()),
            Ring::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|f| f.describe()).collect();
                format!("({})", parts.join(" x "))
            }
            Ring::Table(t) => format!("table[{}]", t.n),
            Ring::Subring { base, elements, .. } => {
                format!("sub[{}]({})", elements.len(), base.describe())
            }
            Ring::Quotient { base, reps, .. } => {
                format!("quot[{}]({})", reps.len(), base.describe())
            }
            Ring::Relabeled { base, .. } => format!("relabeled({})", base.describe()),
            Ring::Burnside(b) => format!("A({})", b.group_name()),
        }
    }
}

/// A ring homomorphism between enumerable rings, stored pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingHom {
    pub map: BTreeMap<Elt, Elt>,
}

impl RingHom {
    pub fn apply(&self, a: &Elt) -> Elt {
        self.map[a].clone()
    }

    /// Check 0, 1, +, × preservation exhaustively.
    pub fn validate(&self, src: &Ring, dst: &Ring) -> Result<()> {
        let elems = src.enumerate()?;
        if self.map.len() != elems.len() {
            return Err(Error::Structure("hom map not total".into()));
        }
        if self.apply(&src.zero()) != dst.zero() || self.apply(&src.one()) != dst.one() {
            return Err(Error::Structure("hom does not preserve 0/1".into()));
        }
        for a in &elems {
            for b in &elems {
                if self.apply(&src.add(a, b)) != dst.add(&self.apply(a), &self.apply(b))
                    || self.apply(&src.mul(a, b)) != dst.mul(&self.apply(a), &self.apply(b))
                {
                    return Err(Error::Structure(format!("hom fails at ({a},{b})")));
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.map.values().all(|v| seen.insert(v.clone()))
    }

    pub fn is_bijective_onto(&self, dst: &Ring) -> bool {
        self.is_injective() && Some(self.map.len() as u64) == dst.size()
    }
}

/// A small generating set of an enumerable ring: elements that, together
/// with 0 and 1, generate everything under +, ×, −.
pub fn generating_set(ring: &Ring) -> Result<Vec<Elt>> {
    let elems = ring.enumerate()?;
    let mut gens: Vec<Elt> = Vec::new();
    let mut closed = prime_subring(ring)?;
    while closed.len() < elems.len() {
        let next = elems
            .iter()
            .find(|e| !closed.contains(*e))
            .expect("closure smaller than ring")
            .clone();
        gens.push(next.clone());
        closed.insert(next);
        close_under_ops(ring, &mut closed);
    }
    Ok(gens)
}

fn prime_subring(ring: &Ring) -> Result<BTreeSet<Elt>> {
    let mut set = BTreeSet::new();
    set.insert(ring.zero());
    set.insert(ring.one());
    close_under_ops(ring, &mut set);
    Ok(set)
}

fn close_under_ops(ring: &Ring, set: &mut BTreeSet<Elt>) {
    loop {
        let mut new: Vec<Elt> = Vec::new();
        let items: Vec<Elt> = set.iter().cloned().collect();
        for a in &items {
            let n = ring.neg(a);
            if !set.contains(&n) {
                new.push(n);
            }
            for b in &items {
                for c in [ring.add(a, b), ring.mul(a, b)] {
                    if !set.contains(&c) {
                        new.push(c);
                    }
                }
            }
        }
        if new.is_empty() {
            return;
        }
        for e in new {
            set.insert(e);
        }
    }
}

/// All ring homomorphisms src → dst (unital), found by assigning images to
/// a generating set and propagating; each candidate is validated
/// exhaustively before being returned.
pub fn ring_homs(src: &Ring, dst: &Ring) -> Result<Vec<RingHom>> {
    let gens = generating_set(src)?;
    let dst_elems = dst.enumerate()?;
    let src_size = src.size().unwrap() as usize;
    let mut out = Vec::new();
    let mut assignment = vec![0usize; gens.len()];
    loop {
        let images: Vec<Elt> = assignment.iter().map(|&i| dst_elems[i].clone()).collect();
        if let Some(map) = propagate_hom(src, dst, &gens, &images, src_size) {
            let hom = RingHom { map };
            if hom.validate(src, dst).is_ok() {
                out.push(hom);
            }
        }
        // Next assignment in mixed radix.
        let mut pos = 0;
        loop {
            if pos == assignment.len() {
                return Ok(out);
            }
            assignment[pos] += 1;
            if assignment[pos] < dst_elems.len() {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
        if gens.is_empty() {
            return Ok(out);
        }
    }
}

/// Grow the partial map {0→0, 1→1, gens→images} under +, ×, −; fails on a
/// conflict. Returns the total map if it covers the source.
fn propagate_hom(
    src: &Ring,
    dst: &Ring,
    gens: &[Elt],
    images: &[Elt],
    src_size: usize,
) -> Option<BTreeMap<Elt, Elt>> {
    let mut map: BTreeMap<Elt, Elt> = BTreeMap::new();
    map.insert(src.zero(), dst.zero());
    map.insert(src.one(), dst.one());
    for (g, img) in gens.iter().zip(images.iter()) {
        if let Some(prev) = map.get(g) {
            if prev != img {
                return None;
            }
        }
        map.insert(g.clone(), img.clone());
    }
    loop {
        let items: Vec<(Elt, Elt)> = map.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
        let mut grew = false;
        for (a, fa) in &items {
            let derived = [(src.neg(a), dst.neg(fa))];
            for (key, val) in derived {
                match map.get(&key) {
                    Some(prev) if *prev != val => return None,
                    Some(_) => {}
                    None => {
                        map.insert(key, val);
                        grew = true;
                    }
                }
            }
            for (b, fb) in &items {
                let derived = [
                    (src.add(a, b), dst.add(fa, fb)),
                    (src.mul(a, b), dst.mul(fa, fb)),
                ];
                for (key, val) in derived {
                    match map.get(&key) {
                        Some(prev) if *prev != val => return None,
                        Some(_) => {}
                        None => {
                            map.insert(key, val);
                            grew = true;
                        }
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    if map.len() == src_size {
        Some(map)
    } else {
        // Generators generate, so this cannot happen for a consistent map.
        None
    }
}

/// All ring isomorphisms src → dst.
pub fn ring_isos(src: &Ring, dst: &Ring) -> Result<Vec<RingHom>> {
    if src.size() != dst.size() {
        return Ok(Vec::new());
    }
    Ok(ring_homs(src, dst)?
        .into_iter()
        .filter(|h| h.is_bijective_onto(dst))
        .collect())
}

/// How a group acts on a ring.
#[derive(Debug, Clone)]
pub enum GAction {
    Trivial,
    /// For `Ring::Function` with index size = |G|: (g·φ)(h) = φ(hg).
    RightTranslation,
    /// Per group element, a permutation of enumeration indices.
    Tables(Arc<Vec<Vec<u64>>>),
}

/// A commutative ring with a group action by ring automorphisms.
#[derive(Debug, Clone)]
pub struct GRing {
    pub group: Arc<FiniteGroup>,
    pub ring: Ring,
    pub action: GAction,
}

impl GRing {
    pub fn trivial_action(group: Arc<FiniteGroup>, ring: Ring) -> GRing {
        GRing {
            group,
            ring,
            action: GAction::Trivial,
        }
    }

    /// Fun(G, R) with right-translation action.
    pub fn function_ring(group: Arc<FiniteGroup>, base: Ring) -> GRing {
        let ring = Ring::Function {
            size: group.order(),
            base: Box::new(base),
        };
        GRing {
            group,
            ring,
            action: GAction::RightTranslation,
        }
    }

    /// Action tables given as enumeration-index permutations per element.
    pub fn from_tables(group: Arc<FiniteGroup>, ring: Ring, tables: Vec<Vec<u64>>) -> Result<GRing> {
        let g = GRing {
            group,
            ring,
            action: GAction::Tables(Arc::new(tables)),
        };
        g.validate()?;
        Ok(g)
    }

    /// Cyclic group acting on GF(p^k) with the generator r1 ↦ Frobenius.
    /// Requires the action to close: x^(p^|G|) = x, i.e. k | |G|·j pattern
    /// checked by `validate`.
    pub fn frobenius(group: Arc<FiniteGroup>, field: GaloisField) -> Result<GRing> {
        let ring = Ring::Galois(field.clone());
        let n = ring.size().unwrap();
        let mut tables = Vec::with_capacity(group.order());
        for i in 0..group.order() {
            let e = field.p.pow(i as u32 % field.k as u32);
            let mut perm = Vec::with_capacity(n as usize);
            for idx in 0..n {
                let x = field.elt_at(idx);
                perm.push(field.index_of(&field.pow(&x, e)));
            }
            tables.push(perm);
        }
        GRing::from_tables(group, ring, tables)
    }

    pub fn act(&self, g: usize, a: &Elt) -> Elt {
        match &self.action {
            GAction::Trivial => a.clone(),
            GAction::RightTranslation => {
                let Elt::Tuple(comps) = a else {
                    panic!("right-translation action on non-tuple element")
                };
                let grp = &*self.group;
                let out: Vec<Elt> = (0..comps.len())
                    .map(|h| comps[grp.mul(h, g)].clone())
                    .collect();
                Elt::Tuple(out)
            }
            GAction::Tables(tables) => {
                let idx = self.ring.index_of(a).expect("element of the ring");
                self.ring.elt_at(tables[g][idx as usize])
            }
        }
    }

    /// Exhaustively verify each action map is a ring automorphism and that
    /// composition respects the group law.
    pub fn validate(&self) -> Result<()> {
        let elems = self.ring.enumerate()?;
        let grp = &*self.group;
        for g in grp.elements() {
            for a in &elems {
                for b in &elems {
                    if self.act(g, &self.ring.add(a, b))
                        != self.ring.add(&self.act(g, a), &self.act(g, b))
                        || self.act(g, &self.ring.mul(a, b))
                            != self.ring.mul(&self.act(g, a), &self.act(g, b))
                    {
                        return Err(Error::Structure(format!(
                            "action of {} is not a ring hom",
                            grp.label(g)
                        )));
                    }
                }
            }
            if self.act(g, &self.ring.one()) != self.ring.one() {
                return Err(Error::Structure("action does not fix 1".into()));
            }
        }
        for g in grp.elements() {
            for h in grp.elements() {
                let gh = grp.mul(g, h);
                for a in &elems {
                    if self.act(g, &self.act(h, a)) != self.act(gh, a) {
                        return Err(Error::Structure("action violates group law".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Elements fixed by every group element in the mask.
    pub fn fixed_elements(&self, mask: u32) -> Result<Vec<Elt>> {
        let elems = self.ring.enumerate()?;
        Ok(elems
            .into_iter()
            .filter(|a| {
                crate::groups::mask_elements(mask).all(|g| self.act(g, a) == *a)
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_idempotents() {
        // ℤ/6: exhaustive scan gives {0, 1, 3, 4}.
        let z6 = Ring::Modular(6);
        let idem = z6.idempotents().unwrap();
        assert_eq!(
            idem,
            vec![Elt::Int(0), Elt::Int(1), Elt::Int(3), Elt::Int(4)]
        );
    }

    #[test]
    fn field_idempotents_trivial() {
        let f4 = Ring::gf(2, 2).unwrap();
        let idem = f4.idempotents().unwrap();
        assert_eq!(idem.len(), 2);
    }

    #[test]
    fn function_ring_idempotents() {
        // Fun(C2, F2): all 0/1 vectors → 4 idempotents.
        let r = Ring::Function {
            size: 2,
            base: Box::new(Ring::gf(2, 1).unwrap()),
        };
        assert_eq!(r.idempotents().unwrap().len(), 4);
    }

    #[test]
    fn ring_axioms_suite() {
        for r in [
            Ring::Modular(4),
            Ring::Modular(6),
            Ring::gf(2, 2).unwrap(),
            Ring::gf(3, 2).unwrap(),
            Ring::Function {
                size: 3,
                base: Box::new(Ring::Modular(4)),
            },
            Ring::Product(vec![Ring::Modular(2), Ring::gf(3, 1).unwrap()]),
        ] {
            r.check_axioms(256).unwrap();
        }
    }

    #[test]
    fn quotient_z4_by_two() {
        let z4 = Ring::Modular(4);
        let ideal: BTreeSet<Elt> = [Elt::Int(0), Elt::Int(2)].into_iter().collect();
        let q = Ring::quotient(z4, &ideal).unwrap();
        assert_eq!(q.size(), Some(2));
        q.check_axioms(16).unwrap();
        assert_eq!(q.add(&q.one(), &q.one()), q.zero());
    }

    #[test]
    fn hom_counts() {
        // Fun(C2,F2) → F2 has exactly the two projections.
        let src = Ring::Function {
            size: 2,
            base: Box::new(Ring::gf(2, 1).unwrap()),
        };
        let dst = Ring::gf(2, 1).unwrap();
        assert_eq!(ring_homs(&src, &dst).unwrap().len(), 2);
        // F4 → F4: identity and Frobenius.
        let f4 = Ring::gf(2, 2).unwrap();
        assert_eq!(ring_homs(&f4, &f4).unwrap().len(), 2);
        // F4 → F2: none.
        assert_eq!(ring_homs(&f4, &dst).unwrap().len(), 0);
        // ℤ/4 → ℤ/2: unique.
        assert_eq!(ring_homs(&Ring::Modular(4), &Ring::Modular(2)).unwrap().len(), 1);
        // ℤ/6 ≅ ℤ/2 × ℤ/3: 4 endomorphism-classifying idempotent targets... just count: homs ℤ/6→ℤ/6 is 1 (unital).
        assert_eq!(ring_homs(&Ring::Modular(6), &Ring::Modular(6)).unwrap().len(), 1);
    }

    #[test]
    fn frobenius_gring() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let gr = GRing::frobenius(c2, GaloisField::new(2, 2).unwrap()).unwrap();
        // Fixed subring is F2.
        assert_eq!(gr.fixed_elements(gr.group.full_mask()).unwrap().len(), 2);
    }

    #[test]
    fn translation_action_is_lawful() {
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let gr = GRing::function_ring(c3, Ring::gf(2, 1).unwrap());
        gr.validate().unwrap();
        // Fixed subring = diagonal copy.
        assert_eq!(gr.fixed_elements(gr.group.full_mask()).unwrap().len(), 2);
    }

    #[test]
    fn subring_indexing() {
        let f4 = Ring::gf(2, 2).unwrap();
        let sub = Ring::subring(f4.clone(), vec![f4.zero(), f4.one()]);
        assert_eq!(sub.size(), Some(2));
        assert_eq!(sub.index_of(&f4.one()).unwrap(), 1);
        assert!(sub.index_of(&Elt::Poly(vec![0, 1])).is_err());
    }
}
