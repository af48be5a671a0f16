//! The Tambara functor data model: levelwise rings indexed by subgroup
//! classes, restriction/transfer/norm/conjugation, bispan evaluation, the
//! sampling axiom checker, homomorphisms, and finite hom enumeration.
//!
//! Values are stored only at the canonical class representatives; a value
//! "at" an arbitrary subgroup S means the value transported to rep(cls S)
//! by the lattice's fixed conjugator. The `arrow_*` methods implement
//! restriction/transfer/norm/conjugation along arbitrary subgroup
//! inclusions in terms of the stored data plus Weyl twists, and bispan
//! evaluation reduces every generator morphism to those arrows orbit by
//! orbit.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::bispans::Bispan;
use crate::error::{Error, Result};
use crate::groups::{
    mask_contains, mask_elements, FiniteGroup, Mask, SubgroupLattice,
};
use crate::gsets::{GMap, GSet};
use crate::rings::burnside::BurnsideRing;
use crate::rings::{ring_homs, Elt, GRing, Perm, Ring};
use crate::rng::SplitMix64;

/// An element of F(X): one component per orbit of X, in the order of
/// `GSet::orbit_decompose`, each living in the level ring of the orbit's
/// stabilizer class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FValue {
    pub comps: Vec<(usize, Elt)>,
}

/// A value together with the actual subgroup it sits at (the element itself
/// is stored in the coordinates of the subgroup's class representative).
type Leveled = (Mask, Elt);

/// The per-class data of the Burnside Tambara functor.
#[derive(Debug, Clone)]
pub struct BurnsideLevel {
    pub rep_mask: Mask,
    pub grp: Arc<FiniteGroup>,
    /// standalone element index → ambient element index
    pub embed: Vec<usize>,
    pub lat: Arc<SubgroupLattice>,
    pub ring: Arc<BurnsideRing>,
}

impl BurnsideLevel {
    pub fn new(ambient: &Arc<FiniteGroup>, rep_mask: Mask) -> Result<Self> {
        let (grp, embed) = ambient.subgroup_group(rep_mask)?;
        let grp = Arc::new(grp);
        let lat = Arc::new(SubgroupLattice::new(grp.clone()));
        let ring = Arc::new(BurnsideRing::new(lat.clone())?);
        Ok(BurnsideLevel {
            rep_mask,
            grp,
            embed,
            lat,
            ring,
        })
    }

    pub fn to_ambient_mask(&self, std: Mask) -> Mask {
        mask_elements(std).fold(0, |m, i| m | (1 << self.embed[i]))
    }

    pub fn from_ambient_mask(&self, amb: Mask) -> Mask {
        let mut m = 0;
        for (std, &a) in self.embed.iter().enumerate() {
            if mask_contains(amb, a) {
                m |= 1 << std;
            }
        }
        m
    }
}

#[derive(Debug)]
pub struct BurnsideData {
    pub levels: Vec<BurnsideLevel>,
    /// Set once the ghost-coordinate norm formula has been verified against
    /// the multiplicative-induction oracle on all transitive basis
    /// elements; virtual (non-effective) norms stay disabled otherwise.
    pub virtual_norms: bool,
}

/// Explicit tables for an enumerable functor: used by quotients, imported
/// JSON tables, and deliberately corrupted functors in tests.
#[derive(Debug, Clone, Default)]
pub struct Tabulated {
    /// (subgroup mask s, class k with s ⊆ rep(k)) → images indexed by the
    /// source level enumeration. `res`: source level k; `tr`/`nm`: source
    /// level cls(s).
    pub res: BTreeMap<(Mask, usize), Vec<Elt>>,
    pub tr: BTreeMap<(Mask, usize), Vec<Elt>>,
    pub nm: BTreeMap<(Mask, usize), Vec<Elt>>,
    /// (class, normalizer element) → permutation images by enumeration.
    pub weyl: BTreeMap<(usize, usize), Vec<Elt>>,
}

#[derive(Debug)]
pub enum TambaraData {
    /// Fixed points of a G-ring: levels R^H, transfer = coset sums,
    /// norm = coset products, conjugation = the action.
    FixedPoint(GRing),
    Burnside(BurnsideData),
    Tabulated(Box<Tabulated>),
    /// Restriction of a functor over a bigger group to a standalone
    /// subgroup; `embed` maps standalone elements into the base group.
    Restricted {
        base: Arc<TambaraFunctor>,
        embed: Vec<usize>,
    },
    /// Label-scrambled copy: level c's element i corresponds to base
    /// element `perms[c].fwd[i]` in base enumeration order.
    Relabeled {
        base: Arc<TambaraFunctor>,
        perms: Vec<Arc<Perm>>,
    },
}

#[derive(Debug)]
pub struct TambaraFunctor {
    group: Arc<FiniteGroup>,
    lat: Arc<SubgroupLattice>,
    levels: Vec<Ring>,
    data: TambaraData,
    desc: String,
}

impl TambaraFunctor {
    pub fn new(
        group: Arc<FiniteGroup>,
        lat: Arc<SubgroupLattice>,
        levels: Vec<Ring>,
        data: TambaraData,
        desc: String,
    ) -> Result<Self> {
        if levels.len() != lat.num_classes() {
            return Err(Error::Mismatch("one level ring per subgroup class".into()));
        }
        Ok(TambaraFunctor {
            group,
            lat,
            levels,
            data,
            desc,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lat
    }

    pub fn num_classes(&self) -> usize {
        self.lat.num_classes()
    }

    pub fn level(&self, class: usize) -> &Ring {
        &self.levels[class]
    }

    pub fn describe(&self) -> &str {
        &self.desc
    }

    pub fn set_desc(&mut self, desc: String) {
        self.desc = desc;
    }

    pub fn data(&self) -> &TambaraData {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut TambaraData {
        &mut self.data
    }

    pub fn is_enumerable(&self) -> bool {
        self.levels.iter().all(|r| r.is_enumerable())
    }

    /// Bottom (trivial subgroup) class index.
    pub fn bottom(&self) -> usize {
        self.lat.bottom()
    }

    pub fn top(&self) -> usize {
        self.lat.top()
    }

    // ------------------------------------------------------------------
    // Primitive operations in stored coordinates.
    // ------------------------------------------------------------------

    /// Conjugation action of n ∈ N_G(rep(class)) on the level at `class`.
    pub fn weyl_act(&self, class: usize, n: usize, x: &Elt) -> Elt {
        debug_assert!(mask_contains(self.lat.classes()[class].normalizer, n));
        match &self.data {
            TambaraData::FixedPoint(gr) => gr.act(n, x),
            TambaraData::Burnside(bd) => {
                let lvl = &bd.levels[class];
                let Elt::IntVec(coeffs) = x else {
                    panic!("Burnside level element")
                };
                let nc = lvl.lat.num_classes();
                let mut out = vec![0i64; nc];
                for (i, &c) in coeffs.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let v_amb = lvl.to_ambient_mask(lvl.lat.rep(i));
                    let conj = self.group.conj_mask(n, v_amb);
                    let j = lvl
                        .lat
                        .class_of_mask(lvl.from_ambient_mask(conj))
                        .expect("conjugate subgroup");
                    out[j] += c;
                }
                Elt::IntVec(out)
            }
            TambaraData::Tabulated(t) => {
                let idx = self.levels[class].index_of(x).expect("level element");
                t.weyl[&(class, n)][idx as usize].clone()
            }
            TambaraData::Restricted { base, embed } => {
                let rep_amb = embed_mask(self.lat.rep(class), embed);
                let n_amb = embed[n];
                let (m, y) = base.arrow_conj(n_amb, (rep_amb, x.clone()));
                debug_assert_eq!(m, rep_amb);
                y
            }
            TambaraData::Relabeled { base, perms } => {
                let (bx, lvl) = (self.to_base(perms, class, x), class);
                let by = base.weyl_act(lvl, n, &bx);
                self.from_base(perms, class, &by)
            }
        }
    }

    /// Restriction from level `k` to a subgroup s ⊆ rep(k); the result is
    /// stored at cls(s) (transported by the lattice conjugator).
    pub fn res_prim(&self, s: Mask, k: usize, x: &Elt) -> Elt {
        debug_assert!(s & self.lat.rep(k) == s);
        match &self.data {
            TambaraData::FixedPoint(gr) => {
                let w = self.lat.conjugator_to_rep(s).expect("subgroup");
                gr.act(w, x)
            }
            TambaraData::Burnside(bd) => {
                let src = &bd.levels[k];
                let dst_cls = self.lat.class_of_mask(s).expect("subgroup");
                let dst = &bd.levels[dst_cls];
                let w = self.lat.conjugator_to_rep(s).expect("subgroup");
                let Elt::IntVec(coeffs) = x else {
                    panic!("Burnside level element")
                };
                let mut out = vec![0i64; dst.lat.num_classes()];
                for (i, &c) in coeffs.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let l_amb = src.to_ambient_mask(src.lat.rep(i));
                    // Orbits of rep(k)/L as an s-set: double cosets s\rep(k)/L.
                    for t in double_cosets_in(&self.group, self.lat.rep(k), s, l_amb) {
                        let u = s & self.group.conj_mask(t, l_amb);
                        let u_rep = self.group.conj_mask(w, u);
                        let j = dst
                            .lat
                            .class_of_mask(dst.from_ambient_mask(u_rep))
                            .expect("subgroup of rep");
                        out[j] += c;
                    }
                }
                Elt::IntVec(out)
            }
            TambaraData::Tabulated(t) => {
                let idx = self.levels[k].index_of(x).expect("level element");
                t.res[&(s, k)][idx as usize].clone()
            }
            TambaraData::Restricted { base, embed } => {
                let rep_amb = embed_mask(self.lat.rep(k), embed);
                let s_amb = embed_mask(s, embed);
                let (_, y) = base.arrow_res(s_amb, (rep_amb, x.clone()));
                // Transport to this lattice's representative of cls(s).
                let w = self.lat.conjugator_to_rep(s).expect("subgroup");
                let (m, z) = base.arrow_conj(embed[w], (s_amb, y));
                debug_assert_eq!(m, embed_mask(self.lat.rep(self.lat.class_of_mask(s).unwrap()), embed));
                z
            }
            TambaraData::Relabeled { base, perms } => {
                let bx = self.to_base(perms, k, x);
                let by = base.res_prim(s, k, &bx);
                let dst_cls = self.lat.class_of_mask(s).expect("subgroup");
                self.from_base(perms, dst_cls, &by)
            }
        }
    }

    /// Transfer into level `k` along s ⊆ rep(k); the argument is stored at
    /// cls(s).
    pub fn tr_prim(&self, s: Mask, k: usize, x: &Elt) -> Elt {
        debug_assert!(s & self.lat.rep(k) == s);
        match &self.data {
            TambaraData::FixedPoint(gr) => {
                let w = self.lat.conjugator_to_rep(s).expect("subgroup");
                let actual = gr.act(self.group.inv(w), x);
                let mut acc = gr.ring.zero();
                for c in transversal_in(&self.group, self.lat.rep(k), s) {
                    acc = gr.ring.add(&acc, &gr.act(c, &actual));
                }
                acc
            }
            TambaraData::Burnside(bd) => {
                let dst = &bd.levels[k];
                let src_cls = self.lat.class_of_mask(s).expect("subgroup");
                let src = &bd.levels[src_cls];
                let w = self.lat.conjugator_to_rep(s).expect("subgroup");
                let winv = self.group.inv(w);
                let Elt::IntVec(coeffs) = x else {
                    panic!("Burnside level element")
                };
                let mut out = vec![0i64; dst.lat.num_classes()];
                for (i, &c) in coeffs.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let v_amb = src.to_ambient_mask(src.lat.rep(i));
                    let u = self.group.conj_mask(winv, v_amb);
                    let j = dst
                        .lat
                        .class_of_mask(dst.from_ambient_mask(u))
                        .expect("subgroup of rep(k)");
                    out[j] += c;
                }
                Elt::IntVec(out)
            }
            TambaraData::Tabulated(t) => {
                let src_cls = self.lat.class_of_mask(s).expect("subgroup");
                let idx = self.levels[src_cls].index_of(x).expect("level element");
                t.tr[&(s, k)][idx as usize].clone()
            }
            TambaraData::Restricted { base, embed } => {
                let rep_amb = embed_mask(self.lat.rep(k), embed);
                let s_amb = embed_mask(s, embed);
                let w = self.lat.conjugator_to_rep(s).expect("subgroup");
                // Untransport from this lattice's rep back to the actual s.
                let (m, y) = base.arrow_conj(base.group.inv(embed[w]), (
                    embed_mask(self.lat.rep(self.lat.class_of_mask(s).unwrap()), embed),
                    x.clone(),
                ));
                debug_assert_eq!(m, s_amb);
                let (_, z) = base.arrow_tr(rep_amb, (s_amb, y));
                z
            }
            TambaraData::Relabeled { base, perms } => {
                let src_cls = self.lat.class_of_mask(s).expect("subgroup");
                let bx = self.to_base(perms, src_cls, x);
                let by = base.tr_prim(s, k, &bx);
                self.from_base(perms, k, &by)
            }
        }
    }

    /// Norm into level `k` along s ⊆ rep(k); the argument is stored at
    /// cls(s). May be unavailable (Burnside virtual norms).
    pub fn nm_prim(&self, s: Mask, k: usize, x: &Elt) -> Result<Elt> {
        debug_assert!(s & self.lat.rep(k) == s);
        match &self.data {
            TambaraData::FixedPoint(gr) => {
                let w = self.lat.conjugator_to_rep(s).expect("subgroup");
                let actual = gr.act(self.group.inv(w), x);
                let mut acc = gr.ring.one();
                for c in transversal_in(&self.group, self.lat.rep(k), s) {
                    acc = gr.ring.mul(&acc, &gr.act(c, &actual));
                }
                Ok(acc)
            }
            TambaraData::Burnside(bd) => {
                let dst = &bd.levels[k];
                let src_cls = self.lat.class_of_mask(s).expect("subgroup");
                let src = &bd.levels[src_cls];
                let w = self.lat.conjugator_to_rep(s).expect("subgroup");
                let Elt::IntVec(coeffs) = x else {
                    panic!("Burnside level element")
                };
                if !bd.virtual_norms && !src.ring.is_effective(coeffs) {
                    return Err(Error::UnsupportedNorm(
                        "virtual Burnside norms disabled (ghost formula unvalidated)".into(),
                    ));
                }
                // Ghost coordinates of the norm at every class L of rep(k):
                // ∏ over double cosets s\rep(k)/L of the mark of x at
                // s ∩ tLt⁻¹.
                let nc = dst.lat.num_classes();
                let mut ghost = vec![0i64; nc];
                for (j, g) in ghost.iter_mut().enumerate() {
                    let l_amb = dst.to_ambient_mask(dst.lat.rep(j));
                    let mut prod: i64 = 1;
                    for t in double_cosets_in(&self.group, self.lat.rep(k), s, l_amb) {
                        let w_sub = s & self.group.conj_mask(t, l_amb);
                        let w_rep = self.group.conj_mask(w, w_sub);
                        let std = src.from_ambient_mask(w_rep);
                        prod *= src.ring.mark_at(coeffs, std)?;
                    }
                    *g = prod;
                }
                dst.ring.from_marks(&ghost)
            }
            TambaraData::Tabulated(t) => {
                let src_cls = self.lat.class_of_mask(s).expect("subgroup");
                let idx = self.levels[src_cls].index_of(x).expect("level element");
                let table = t.nm.get(&(s, k)).ok_or_else(|| {
                    Error::UnsupportedNorm(format!("no norm table for pair ({s:#b},{k})"))
                })?;
                Ok(table[idx as usize].clone())
            }
            TambaraData::Restricted { base, embed } => {
                let rep_amb = embed_mask(self.lat.rep(k), embed);
                let s_amb = embed_mask(s, embed);
                let w = self.lat.conjugator_to_rep(s).expect("subgroup");
                let (m, y) = base.arrow_conj(base.group.inv(embed[w]), (
                    embed_mask(self.lat.rep(self.lat.class_of_mask(s).unwrap()), embed),
                    x.clone(),
                ));
                debug_assert_eq!(m, s_amb);
                let (_, z) = base.arrow_nm(rep_amb, (s_amb, y))?;
                Ok(z)
            }
            TambaraData::Relabeled { base, perms } => {
                let src_cls = self.lat.class_of_mask(s).expect("subgroup");
                let bx = self.to_base(perms, src_cls, x);
                let by = base.nm_prim(s, k, &bx)?;
                Ok(self.from_base(perms, k, &by))
            }
        }
    }

    fn to_base(&self, perms: &[Arc<Perm>], class: usize, x: &Elt) -> Elt {
        let TambaraData::Relabeled { base, .. } = &self.data else {
            unreachable!()
        };
        let Elt::Int(i) = x else {
            panic!("relabeled level element")
        };
        base.level(class).elt_at(perms[class].fwd[*i as usize])
    }

    fn from_base(&self, perms: &[Arc<Perm>], class: usize, y: &Elt) -> Elt {
        let TambaraData::Relabeled { base, .. } = &self.data else {
            unreachable!()
        };
        let bidx = base.level(class).index_of(y).expect("base element");
        Elt::Int(perms[class].inv[bidx as usize] as i64)
    }

    // ------------------------------------------------------------------
    // Arrows between arbitrary actual subgroups.
    // ------------------------------------------------------------------

    /// conj_g: F(G/s) → F(G/gsg⁻¹), in stored coordinates.
    pub fn arrow_conj(&self, g: usize, (s, x): (Mask, Elt)) -> Leveled {
        let target = self.group.conj_mask(g, s);
        let cls = self.lat.class_of_mask(s).expect("subgroup");
        let w_s = self.lat.conjugator_to_rep(s).expect("subgroup");
        let w_t = self.lat.conjugator_to_rep(target).expect("subgroup");
        // Net twist on the stored level: w_t · g · w_s⁻¹ ∈ N(rep).
        let tau = self
            .group
            .mul(self.group.mul(w_t, g), self.group.inv(w_s));
        (target, self.weyl_act(cls, tau, &x))
    }

    /// Restriction along s ⊆ t between actual subgroups.
    pub fn arrow_res(&self, s: Mask, (t, x): (Mask, Elt)) -> Leveled {
        debug_assert!(s & t == s);
        let k = self.lat.class_of_mask(t).expect("subgroup");
        let w_t = self.lat.conjugator_to_rep(t).expect("subgroup");
        let s_prime = self.group.conj_mask(w_t, s);
        let raw = self.res_prim(s_prime, k, &x);
        let cls_s = self.lat.class_of_mask(s).expect("subgroup");
        let w_s = self.lat.conjugator_to_rep(s).expect("subgroup");
        let w_sp = self.lat.conjugator_to_rep(s_prime).expect("subgroup");
        let tau = self.group.mul(
            self.group.mul(w_s, self.group.inv(w_t)),
            self.group.inv(w_sp),
        );
        (s, self.weyl_act(cls_s, tau, &raw))
    }

    /// Transfer along s ⊆ t between actual subgroups.
    pub fn arrow_tr(&self, t: Mask, (s, x): (Mask, Elt)) -> Leveled {
        debug_assert!(s & t == s);
        let k = self.lat.class_of_mask(t).expect("subgroup");
        let w_t = self.lat.conjugator_to_rep(t).expect("subgroup");
        let s_prime = self.group.conj_mask(w_t, s);
        let cls_s = self.lat.class_of_mask(s).expect("subgroup");
        let w_s = self.lat.conjugator_to_rep(s).expect("subgroup");
        let w_sp = self.lat.conjugator_to_rep(s_prime).expect("subgroup");
        let tau = self
            .group
            .mul(self.group.mul(w_sp, w_t), self.group.inv(w_s));
        let twisted = self.weyl_act(cls_s, tau, &x);
        (t, self.tr_prim(s_prime, k, &twisted))
    }

    /// Norm along s ⊆ t between actual subgroups.
    pub fn arrow_nm(&self, t: Mask, (s, x): (Mask, Elt)) -> Result<Leveled> {
        debug_assert!(s & t == s);
        let k = self.lat.class_of_mask(t).expect("subgroup");
        let w_t = self.lat.conjugator_to_rep(t).expect("subgroup");
        let s_prime = self.group.conj_mask(w_t, s);
        let cls_s = self.lat.class_of_mask(s).expect("subgroup");
        let w_s = self.lat.conjugator_to_rep(s).expect("subgroup");
        let w_sp = self.lat.conjugator_to_rep(s_prime).expect("subgroup");
        let tau = self
            .group
            .mul(self.group.mul(w_sp, w_t), self.group.inv(w_s));
        let twisted = self.weyl_act(cls_s, tau, &x);
        Ok((t, self.nm_prim(s_prime, k, &twisted)?))
    }

    // ------------------------------------------------------------------
    // Bispan evaluation.
    // ------------------------------------------------------------------

    /// Check the value shape against the orbits of X.
    pub fn check_value(&self, x: &GSet, v: &FValue) -> Result<()> {
        let dec = x.orbit_decompose(&self.lat)?;
        if dec.len() != v.comps.len() {
            return Err(Error::Mismatch("value has wrong number of components".into()));
        }
        for (info, (class, elt)) in dec.iter().zip(v.comps.iter()) {
            if info.class != *class {
                return Err(Error::Mismatch("value component at wrong level".into()));
            }
            if !self.levels[*class].contains(elt) {
                return Err(Error::Mismatch(format!(
                    "element {elt} not in level {class}"
                )));
            }
        }
        Ok(())
    }

    /// F(R_f): F(Y) → F(X) for f: X → Y.
    pub fn eval_restriction(&self, f: &GMap, v: &FValue) -> Result<FValue> {
        let x_dec = f.src.orbit_decompose(&self.lat)?;
        let y_dec = f.dst.orbit_decompose(&self.lat)?;
        let mut comps = Vec::with_capacity(x_dec.len());
        for info in &x_dec {
            let h_mask = self.lat.rep(info.class);
            let q_prime = f.apply(info.base);
            let (oi, u) = locate(&f.dst, &y_dec, q_prime, &self.group)?;
            let (_, vy) = &v.comps[oi];
            let moved = self.arrow_conj(u, (self.lat.rep(y_dec[oi].class), vy.clone()));
            let (_, val) = self.arrow_res(h_mask, moved);
            comps.push((info.class, val));
        }
        Ok(FValue { comps })
    }

    /// F(T_f): F(X) → F(Y), sums over the fibers.
    pub fn eval_transfer(&self, f: &GMap, v: &FValue) -> Result<FValue> {
        self.eval_covariant(f, v, true)
    }

    /// F(N_f): F(X) → F(Y), multiplies over the fibers.
    pub fn eval_norm(&self, f: &GMap, v: &FValue) -> Result<FValue> {
        self.eval_covariant(f, v, false)
    }

    fn eval_covariant(&self, f: &GMap, v: &FValue, additive: bool) -> Result<FValue> {
        let x_dec = f.src.orbit_decompose(&self.lat)?;
        let y_dec = f.dst.orbit_decompose(&self.lat)?;
        let mut comps: Vec<(usize, Elt)> = y_dec
            .iter()
            .map(|info| {
                let ring = &self.levels[info.class];
                (
                    info.class,
                    if additive { ring.zero() } else { ring.one() },
                )
            })
            .collect();
        for (xi, info) in x_dec.iter().enumerate() {
            let h_mask = self.lat.rep(info.class);
            let (_, vx) = &v.comps[xi];
            let q_prime = f.apply(info.base);
            let t_mask = f.dst.stabilizer(q_prime);
            let up = if additive {
                self.arrow_tr(t_mask, (h_mask, vx.clone()))
            } else {
                self.arrow_nm(t_mask, (h_mask, vx.clone()))?
            };
            let (oi, u) = locate(&f.dst, &y_dec, q_prime, &self.group)?;
            let (back_mask, val) = self.arrow_conj(self.group.inv(u), up);
            debug_assert_eq!(back_mask, self.lat.rep(y_dec[oi].class));
            let ring = &self.levels[y_dec[oi].class];
            comps[oi].1 = if additive {
                ring.add(&comps[oi].1, &val)
            } else {
                ring.mul(&comps[oi].1, &val)
            };
        }
        Ok(FValue { comps })
    }

    /// Evaluate a bispan on a tuple indexed by the orbits of its source.
    pub fn eval_bispan(&self, b: &Bispan, v: &FValue) -> Result<FValue> {
        self.check_value(b.src(), v)?;
        let (h, g, f) = b.legs();
        let pulled = self.eval_restriction(h, v)?;
        let normed = self.eval_norm(g, &pulled)?;
        self.eval_transfer(f, &normed)
    }

    // ------------------------------------------------------------------
    // Value enumeration and sampling.
    // ------------------------------------------------------------------

    /// All values of F(X), or None if the space exceeds the cap (or a level
    /// is not enumerable).
    pub fn enumerate_values(&self, x: &GSet, cap: u64) -> Result<Option<Vec<FValue>>> {
        let dec = x.orbit_decompose(&self.lat)?;
        let mut total: u64 = 1;
        for info in &dec {
            match self.levels[info.class].size() {
                Some(n) => {
                    total = total.saturating_mul(n);
                    if total > cap {
                        return Ok(None);
                    }
                }
                None => return Ok(None),
            }
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut idx = vec![0u64; dec.len()];
        loop {
            let comps: Vec<(usize, Elt)> = dec
                .iter()
                .zip(idx.iter())
                .map(|(info, &i)| (info.class, self.levels[info.class].elt_at(i)))
                .collect();
            out.push(FValue { comps });
            let mut pos = 0;
            loop {
                if pos == dec.len() {
                    return Ok(Some(out));
                }
                idx[pos] += 1;
                if idx[pos] < self.levels[dec[pos].class].size().unwrap() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if dec.is_empty() {
                return Ok(Some(out));
            }
        }
    }

    /// A random value of F(X); Burnside levels get small effective vectors.
    pub fn random_value(&self, x: &GSet, rng: &mut SplitMix64) -> Result<FValue> {
        let dec = x.orbit_decompose(&self.lat)?;
        let comps = dec
            .iter()
            .map(|info| {
                let ring = &self.levels[info.class];
                let elt = match ring.size() {
                    Some(n) => ring.elt_at(rng.below(n as usize) as u64),
                    None => {
                        let Ring::Burnside(br) = ring else {
                            unreachable!()
                        };
                        Elt::IntVec((0..br.num_classes()).map(|_| rng.below(3) as i64).collect())
                    }
                };
                (info.class, elt)
            })
            .collect();
        Ok(FValue { comps })
    }

    /// Monomorphic restriction condition: all restrictions to the bottom
    /// level are injective.
    pub fn is_mrc(&self) -> Result<bool> {
        let e_mask = self.group.id_mask();
        for c in 0..self.num_classes() {
            let elems = self.levels[c].enumerate()?;
            let mut seen = alloc::collections::BTreeSet::new();
            for x in elems {
                let (_, img) = self.arrow_res(e_mask, (self.lat.rep(c), x));
                if !seen.insert(img) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Relabel every level by a seeded random permutation of element
    /// indices; structurally identical but with opaque element labels.
    pub fn scramble(self: &Arc<Self>, seed: u64) -> Result<TambaraFunctor> {
        if !self.is_enumerable() {
            return Err(Error::NotEnumerable("scramble".into()));
        }
        let mut rng = SplitMix64::new(seed);
        let mut perms = Vec::with_capacity(self.num_classes());
        let mut levels = Vec::with_capacity(self.num_classes());
        for c in 0..self.num_classes() {
            let n = self.levels[c].size().unwrap();
            let mut fwd: Vec<u64> = (0..n).collect();
            // Fisher–Yates.
            for i in (1..n as usize).rev() {
                let j = rng.below(i + 1);
                fwd.swap(i, j);
            }
            let perm = Arc::new(Perm::new(fwd));
            levels.push(Ring::Relabeled {
                base: Box::new(self.levels[c].clone()),
                perm: perm.clone(),
            });
            perms.push(perm);
        }
        TambaraFunctor::new(
            self.group.clone(),
            self.lat.clone(),
            levels,
            TambaraData::Relabeled {
                base: self.clone(),
                perms,
            },
            format!("scrambled({})", self.desc),
        )
    }
}

fn embed_mask(std: Mask, embed: &[usize]) -> Mask {
    mask_elements(std).fold(0, |m, i| m | (1 << embed[i]))
}

/// Materialize the full operation tables of an enumerable functor.
pub fn tabulate(t: &TambaraFunctor) -> Result<Tabulated> {
    if !t.is_enumerable() {
        return Err(Error::NotEnumerable("tabulate".into()));
    }
    let lat = t.lattice();
    let mut out = Tabulated::default();
    for k in 0..t.num_classes() {
        let rep = lat.rep(k);
        let k_elems = t.level(k).enumerate()?;
        for &s in lat.subgroups() {
            if s & rep != s {
                continue;
            }
            let cls_s = lat.class_of_mask(s)?;
            let res_tab: Vec<Elt> = k_elems.iter().map(|x| t.res_prim(s, k, x)).collect();
            out.res.insert((s, k), res_tab);
            let s_elems = t.level(cls_s).enumerate()?;
            let tr_tab: Vec<Elt> = s_elems.iter().map(|x| t.tr_prim(s, k, x)).collect();
            out.tr.insert((s, k), tr_tab);
            let nm_tab: Vec<Elt> = s_elems
                .iter()
                .map(|x| t.nm_prim(s, k, x))
                .collect::<Result<Vec<_>>>()?;
            out.nm.insert((s, k), nm_tab);
        }
        for n in mask_elements(lat.classes()[k].normalizer) {
            let tab: Vec<Elt> = k_elems.iter().map(|x| t.weyl_act(k, n, x)).collect();
            out.weyl.insert((k, n), tab);
        }
    }
    Ok(out)
}

/// Coset representatives of s in the subgroup `within` (s ⊆ within).
pub fn transversal_in(g: &Arc<FiniteGroup>, within: Mask, s: Mask) -> Vec<usize> {
    let mut reps = Vec::new();
    let mut covered: Mask = 0;
    for a in mask_elements(within) {
        if !mask_contains(covered, a) {
            reps.push(a);
            for b in mask_elements(s) {
                covered |= 1 << g.mul(a, b);
            }
        }
    }
    reps
}

/// Double coset representatives k\within/h for subgroups of `within`.
pub fn double_cosets_in(g: &Arc<FiniteGroup>, within: Mask, k: Mask, h: Mask) -> Vec<usize> {
    let mut reps = Vec::new();
    let mut covered: Mask = 0;
    for a in mask_elements(within) {
        if !mask_contains(covered, a) {
            reps.push(a);
            for x in mask_elements(k) {
                for y in mask_elements(h) {
                    covered |= 1 << g.mul(g.mul(x, a), y);
                }
            }
        }
    }
    reps
}

/// Locate a point in an orbit decomposition: returns (orbit index, u) with
/// point = u · base.
fn locate(
    set: &GSet,
    dec: &[crate::gsets::OrbitInfo],
    point: usize,
    group: &Arc<FiniteGroup>,
) -> Result<(usize, usize)> {
    for (oi, info) in dec.iter().enumerate() {
        if info.points_by_coset.contains(&point) {
            for u in group.elements() {
                if set.act(u, info.base) == point {
                    return Ok((oi, u));
                }
            }
        }
    }
    Err(Error::Inconsistency("point not found in any orbit".into()))
}

// ----------------------------------------------------------------------
// Homomorphisms.
// ----------------------------------------------------------------------

/// A morphism of Tambara functors, stored levelwise and pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TambaraHom {
    pub levels: Vec<BTreeMap<Elt, Elt>>,
}

impl TambaraHom {
    pub fn identity(t: &TambaraFunctor) -> Result<TambaraHom> {
        let mut levels = Vec::new();
        for c in 0..t.num_classes() {
            let map = t
                .level(c)
                .enumerate()?
                .into_iter()
                .map(|e| (e.clone(), e))
                .collect();
            levels.push(map);
        }
        Ok(TambaraHom { levels })
    }

    pub fn apply(&self, class: usize, x: &Elt) -> Elt {
        self.levels[class][x].clone()
    }
}

/// How much of the hom conditions to check exhaustively.
#[derive(Debug, Clone, Copy)]
pub enum CheckMode {
    Exhaustive,
    /// Pairwise conditions sampled with the given seed and count (unary
    /// conditions stay exhaustive); used for oversized levels.
    Sampled(u64, usize),
}

/// Verify that levelwise maps form a morphism of Tambara functors:
/// ring homs at every level commuting with restriction, transfer, norm, and
/// conjugation.
pub fn check_hom(
    src: &TambaraFunctor,
    dst: &TambaraFunctor,
    hom: &TambaraHom,
    mode: CheckMode,
) -> Result<()> {
    if src.group() != dst.group() {
        return Err(Error::Mismatch("homs need a common group".into()));
    }
    if hom.levels.len() != src.num_classes() {
        return Err(Error::Mismatch("one level map per class".into()));
    }
    let lat = src.lattice();
    for c in 0..src.num_classes() {
        let s_ring = src.level(c);
        let d_ring = dst.level(c);
        let elems = s_ring.enumerate()?;
        if hom.levels[c].len() != elems.len() {
            return Err(Error::Structure(format!("level {c} map is not total")));
        }
        if hom.apply(c, &s_ring.zero()) != d_ring.zero()
            || hom.apply(c, &s_ring.one()) != d_ring.one()
        {
            return Err(Error::Structure(format!("level {c} map breaks 0/1")));
        }
        // Pairwise ring conditions.
        let check_pair = |a: &Elt, b: &Elt| -> Result<()> {
            if hom.apply(c, &s_ring.add(a, b)) != d_ring.add(&hom.apply(c, a), &hom.apply(c, b))
                || hom.apply(c, &s_ring.mul(a, b))
                    != d_ring.mul(&hom.apply(c, a), &hom.apply(c, b))
            {
                return Err(Error::Structure(format!(
                    "level {c} map is not a ring hom at ({a},{b})"
                )));
            }
            Ok(())
        };
        match mode {
            CheckMode::Exhaustive => {
                for a in &elems {
                    for b in &elems {
                        check_pair(a, b)?;
                    }
                }
            }
            CheckMode::Sampled(seed, count) => {
                let mut rng = SplitMix64::new(seed ^ c as u64);
                for _ in 0..count {
                    let a = &elems[rng.below(elems.len())];
                    let b = &elems[rng.below(elems.len())];
                    check_pair(a, b)?;
                }
            }
        }
        // Weyl equivariance (exhaustive; the normalizer is small).
        for n in mask_elements(lat.classes()[c].normalizer) {
            for a in &elems {
                if hom.apply(c, &src.weyl_act(c, n, a)) != dst.weyl_act(c, n, &hom.apply(c, a)) {
                    return Err(Error::Structure(format!(
                        "level {c} map breaks conjugation by element {n}"
                    )));
                }
            }
        }
    }
    // Compatibility with res/tr/nm on every stored pair.
    for k in 0..src.num_classes() {
        let rep = lat.rep(k);
        for &s in lat.subgroups() {
            if s & rep != s {
                continue;
            }
            let cls_s = lat.class_of_mask(s)?;
            for x in src.level(k).enumerate()? {
                let lhs = hom.apply(cls_s, &src.res_prim(s, k, &x));
                let rhs = dst.res_prim(s, k, &hom.apply(k, &x));
                if lhs != rhs {
                    return Err(Error::Structure(format!(
                        "restriction compatibility fails at pair ({s:#b} ⊆ rep {k})"
                    )));
                }
            }
            for x in src.level(cls_s).enumerate()? {
                let lhs = hom.apply(k, &src.tr_prim(s, k, &x));
                let rhs = dst.tr_prim(s, k, &hom.apply(cls_s, &x));
                if lhs != rhs {
                    return Err(Error::Structure(format!(
                        "transfer compatibility fails at pair ({s:#b} ⊆ rep {k})"
                    )));
                }
                let lhs = hom.apply(k, &src.nm_prim(s, k, &x)?);
                let rhs = dst.nm_prim(s, k, &hom.apply(cls_s, &x))?;
                if lhs != rhs {
                    return Err(Error::Structure(format!(
                        "norm compatibility fails at pair ({s:#b} ⊆ rep {k})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Whether all restrictions-to-bottom of `t` are injective, with the level-e
/// images cached for extension.
fn res_to_bottom_table(t: &TambaraFunctor) -> Result<Option<Vec<BTreeMap<Elt, Elt>>>> {
    let e_mask = t.group().id_mask();
    let mut tables = Vec::new();
    for c in 0..t.num_classes() {
        let mut table = BTreeMap::new();
        for x in t.level(c).enumerate()? {
            let (_, img) = t.arrow_res(e_mask, (t.lattice().rep(c), x.clone()));
            if table.insert(img, x).is_some() {
                return Ok(None);
            }
        }
        tables.push(table);
    }
    Ok(Some(tables))
}

/// All Tambara morphisms src → dst, for enumerable src and dst with
/// injective restrictions to the bottom level. Candidates are the
/// Weyl-equivariant ring homs on the bottom level, extended through the
/// injective restrictions and validated exhaustively.
pub fn tambara_homs(src: &TambaraFunctor, dst: &TambaraFunctor) -> Result<Vec<TambaraHom>> {
    if src.group() != dst.group() {
        return Err(Error::Mismatch("homs need a common group".into()));
    }
    let e = src.bottom();
    let dst_tables = res_to_bottom_table(dst)?.ok_or_else(|| {
        Error::Precondition(
            "hom enumeration needs injective restrictions-to-bottom in the target".into(),
        )
    })?;
    let bottom_homs = ring_homs(src.level(e), dst.level(e))?;
    let group = src.group().clone();
    let mut out = Vec::new();
    'cand: for h in bottom_homs {
        // Equivariance for the full Weyl action at the bottom (N(e) = G).
        for g in group.elements() {
            for (x, hx) in h.map.iter() {
                if h.map[&src.weyl_act(e, g, x)] != dst.weyl_act(e, g, hx) {
                    continue 'cand;
                }
            }
        }
        let mut levels: Vec<BTreeMap<Elt, Elt>> = vec![BTreeMap::new(); src.num_classes()];
        levels[e] = h.map.clone();
        let e_mask = group.id_mask();
        for c in 0..src.num_classes() {
            if c == e {
                continue;
            }
            for x in src.level(c).enumerate()? {
                let (_, xe) = src.arrow_res(e_mask, (src.lattice().rep(c), x.clone()));
                let img_e = h.map[&xe].clone();
                match dst_tables[c].get(&img_e) {
                    Some(z) => {
                        levels[c].insert(x, z.clone());
                    }
                    None => continue 'cand,
                }
            }
        }
        let hom = TambaraHom { levels };
        if check_hom(src, dst, &hom, CheckMode::Exhaustive).is_ok() {
            out.push(hom);
        }
    }
    Ok(out)
}

// ----------------------------------------------------------------------
// The sampling axiom checker.
// ----------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Violation {
    pub family: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub samples: usize,
    pub skipped: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Draw random composable bispan pairs over small G-sets and verify
/// F(b2)∘F(b1) = F(b2∘b1) on enumerated or sampled inputs. Failures are
/// tagged with the generator family that produced them.
pub fn check_axioms(t: &TambaraFunctor, seed: u64, budget: usize) -> Result<AxiomReport> {
    let mut rng = SplitMix64::new(seed);
    let mut report = AxiomReport::default();
    let lat = t.lattice();
    let group = t.group().clone();
    let max_points = 6;
    let guard = 20_000;

    // Generator pairs with the coherence rule each one exercises.
    let kinds = [
        ("T", "T", "functoriality"),
        ("N", "N", "functoriality"),
        ("R", "R", "functoriality"),
        ("R", "T", "Mackey"),
        ("R", "N", "norm Mackey"),
        ("N", "T", "Tambara reciprocity"),
        ("T", "N", "Frobenius/Weyl"),
        ("T", "R", "projection"),
        ("N", "R", "norm projection"),
        ("*", "*", "general"),
    ];

    while report.samples < budget {
        let (k2, k1, rule) = *rng.pick(&kinds);
        let family = format!("{k2}∘{k1} ({rule})");
        let Some((b1, b2)) = sample_pair(t, &mut rng, k1, k2, max_points, guard) else {
            report.skipped += 1;
            if report.skipped > budget * 20 {
                return Err(Error::CapExceeded(
                    "axiom checker could not draw enough samples".into(),
                ));
            }
            continue;
        };
        let composed = match b2.compose_with_guard(&b1, guard) {
            Ok(c) => c,
            Err(Error::CapExceeded(_)) => {
                report.skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        // Inputs: exhaustive when small, otherwise sampled.
        let inputs: Vec<FValue> = match t.enumerate_values(b1.src(), 32)? {
            Some(all) => all,
            None => (0..4)
                .map(|_| t.random_value(b1.src(), &mut rng))
                .collect::<Result<Vec<_>>>()?,
        };
        for v in inputs {
            let two_step = t.eval_bispan(&b2, &t.eval_bispan(&b1, &v)?)?;
            let one_step = t.eval_bispan(&composed, &v)?;
            if two_step != one_step {
                report.violations.push(Violation {
                    family: family.clone(),
                    detail: format!(
                        "input {:?}: two-step {:?} ≠ composed {:?}",
                        v.comps, two_step.comps, one_step.comps
                    ),
                });
            }
        }
        report.samples += 1;
        let _ = (&group, lat);
    }
    Ok(report)
}

fn random_gset(
    group: &Arc<FiniteGroup>,
    lat: &SubgroupLattice,
    rng: &mut SplitMix64,
    max_points: usize,
) -> GSet {
    let mut acc = GSet::empty(group.clone());
    let mut budget = max_points.max(1);
    let n_orbits = 1 + rng.below(3);
    for _ in 0..n_orbits {
        let class = rng.below(lat.num_classes());
        let orbit = GSet::orbit(group.clone(), lat.rep(class)).expect("orbit");
        if orbit.len() > budget {
            continue;
        }
        budget -= orbit.len();
        let (joined, _, _) = acc.disjoint_union(&orbit).expect("same group");
        acc = joined;
    }
    if acc.is_empty() {
        GSet::point(group.clone())
    } else {
        acc
    }
}

/// Sample a composable pair (b1: X→Y, b2: Y→Z) from the requested generator
/// families ("*" = an arbitrary bispan).
fn sample_pair(
    t: &TambaraFunctor,
    rng: &mut SplitMix64,
    k1: &str,
    k2: &str,
    max_points: usize,
    _guard: usize,
) -> Option<(Bispan, Bispan)> {
    let group = t.group().clone();
    let lat = t.lattice();
    let mk = |kind: &str, src_hint: Option<&GSet>, rng: &mut SplitMix64| -> Option<Bispan> {
        match kind {
            "T" | "N" | "R" => {
                let a = match src_hint {
                    Some(s) => s.clone(),
                    None => random_gset(&group, lat, rng, max_points),
                };
                let b = random_gset(&group, lat, rng, max_points);
                match kind {
                    // T_f, N_f: X→Y needs f: X→Y.
                    "T" => GMap::random(&a, &b, rng).map(|f| Bispan::transfer(&f)),
                    "N" => GMap::random(&a, &b, rng).map(|f| Bispan::norm(&f)),
                    // R_f: X→Y needs f: Y→X.
                    "R" => GMap::random(&b, &a, rng).map(|f| Bispan::restriction(&f)),
                    _ => unreachable!(),
                }
            }
            _ => {
                let x = match src_hint {
                    Some(s) => s.clone(),
                    None => random_gset(&group, lat, rng, max_points),
                };
                let y = random_gset(&group, lat, rng, max_points);
                let a = random_gset(&group, lat, rng, max_points);
                let b = random_gset(&group, lat, rng, max_points);
                let h = GMap::random(&a, &x, rng)?;
                let g = GMap::random(&a, &b, rng)?;
                let f = GMap::random(&b, &y, rng)?;
                Bispan::from_legs(&h, &g, &f).ok()
            }
        }
    };
    let b1 = mk(k1, None, rng)?;
    // b2 must start at b1.dst.
    for _ in 0..8 {
        if let Some(b2) = mk(k2, Some(b1.dst()), rng) {
            if b2.src() == b1.dst() {
                return Some((b1, b2));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{coinduce, constant, fixed_point};
    use crate::groups::mask_len;
    use crate::rings::{GaloisField, Ring};

    #[test]
    fn identity_hom_is_valid() {
        let t = constant(
            Arc::new(FiniteGroup::cyclic(2)),
            Ring::gf(3, 1).unwrap(),
        )
        .unwrap();
        let id = TambaraHom::identity(&t).unwrap();
        check_hom(&t, &t, &id, CheckMode::Exhaustive).unwrap();
    }

    #[test]
    fn hom_dropping_weyl_equivariance_is_rejected() {
        // Over S3, acting on the bottom level of coinduce(F2) by a
        // non-central element is a ring automorphism but not equivariant.
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let t = coinduce(s3.clone(), Ring::gf(2, 1).unwrap()).unwrap();
        let noncentral = s3
            .elements()
            .find(|&g| g != s3.id() && s3.elements().any(|h| s3.mul(g, h) != s3.mul(h, g)))
            .expect("S3 has noncentral elements");
        let mut hom = TambaraHom::identity(&t).unwrap();
        let e = t.bottom();
        hom.levels[e] = t
            .level(e)
            .enumerate()
            .unwrap()
            .into_iter()
            .map(|x| {
                let tw = t.weyl_act(e, noncentral, &x);
                (x, tw)
            })
            .collect();
        let err = check_hom(&t, &t, &hom, CheckMode::Exhaustive).unwrap_err();
        let msg = alloc::format!("{err}");
        assert!(msg.contains("conjugation") || msg.contains("compatibility"), "{msg}");
    }

    #[test]
    fn adjunction_count_to_fixed_point_functor() {
        // |Hom_Tamb(T, underline(S))| equals the number of equivariant ring
        // homs T(G/e) → S, enumerated on both sides.
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let gr = crate::rings::GRing::frobenius(c2.clone(), GaloisField::new(2, 2).unwrap())
            .unwrap();
        let target = fixed_point(gr.clone()).unwrap();
        for t in [
            constant(c2.clone(), Ring::gf(2, 1).unwrap()).unwrap(),
            fixed_point(
                crate::rings::GRing::frobenius(c2.clone(), GaloisField::new(2, 2).unwrap())
                    .unwrap(),
            )
            .unwrap(),
        ] {
            let lhs = tambara_homs(&t, &target).unwrap().len();
            let rhs = crate::rings::ring_homs(t.level(t.bottom()), &gr.ring)
                .unwrap()
                .into_iter()
                .filter(|h| {
                    c2.elements().all(|g| {
                        h.map.iter().all(|(x, hx)| {
                            h.map[&t.weyl_act(t.bottom(), g, x)] == gr.act(g, hx)
                        })
                    })
                })
                .count();
            assert_eq!(lhs, rhs, "{}", t.describe());
            assert!(lhs > 0);
        }
    }

    #[test]
    fn transversal_and_double_cosets_in_subgroup() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let lat = SubgroupLattice::new(g.clone());
        let c3 = lat
            .classes()
            .iter()
            .find(|c| c.order == 3)
            .unwrap()
            .rep;
        let e = g.id_mask();
        assert_eq!(transversal_in(&g, c3, e).len(), 3);
        assert_eq!(double_cosets_in(&g, c3, e, e).len(), 3);
        assert_eq!(mask_len(c3), 3);
    }
}
