//! The bispan category of a finite group: morphisms X → Y are isomorphism
//! classes of diagrams X ← A → B → Y of finite G-sets.
//!
//! Composition follows the rewriting chain (TNR)(TNR) → TNR: pure classes
//! compose directly, R past T or N is a pullback square, and N past T goes
//! through the dependent product with its counit. The norm–transfer step is
//! never special-cased; it always calls `gsets::dependent_product`.
//!
//! Equality is canonical-form equality. A diagram is canonicalized piecewise
//! over the orbits of B: a piece (one B-orbit together with the part of A
//! above it) is coded, for a choice of base point b, by the exact stabilizer
//! S of b, the point f(b) of the fixed endpoint Y, and the S-orbit codes
//! (exact stabilizer inside S, image point in X) of the fiber of A over b.
//! Minimizing the code over base choices and sorting pieces yields a
//! complete invariant: pieces with equal codes are isomorphic, and the
//! concrete canonical diagram is rebuilt from the codes.

use alloc::format;
use alloc::string::String;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::groups::{mask_elements, Mask, SubgroupLattice};
use crate::gsets::{dependent_product, pullback, GMap, GSet, DEFAULT_SIZE_GUARD};

/// Code of one S-orbit of the fiber of A over the chosen base point:
/// the orbit is S/U mapping to X by u·base ↦ u·x.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiberOrbitKey {
    /// Elements of U = S ∩ Stab(a), sorted.
    pub stab: Vec<usize>,
    /// h(a) ∈ X.
    pub x: usize,
}

/// Code of one B-orbit piece of a bispan.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PieceKey {
    /// Elements of S = Stab(b), sorted.
    pub stab: Vec<usize>,
    /// f(b) ∈ Y.
    pub y: usize,
    /// Sorted fiber orbit codes of g⁻¹(b) as an S-set over X.
    pub fiber: Vec<FiberOrbitKey>,
}

/// A morphism of the bispan category, held in canonical form.
#[derive(Debug, Clone)]
pub struct Bispan {
    src: GSet,
    dst: GSet,
    keys: Vec<PieceKey>,
    /// Canonical representative diagram: src ←h A →g B →f dst.
    h: GMap,
    g: GMap,
    f: GMap,
}

impl PartialEq for Bispan {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src && self.dst == other.dst && self.keys == other.keys
    }
}
impl Eq for Bispan {}

impl Bispan {
    /// Canonicalize a diagram X ←h A →g B →f Y.
    pub fn from_legs(h: &GMap, g: &GMap, f: &GMap) -> Result<Bispan> {
        if h.src != g.src || g.dst != f.src {
            return Err(Error::Mismatch("bispan legs do not share objects".into()));
        }
        let x = h.dst.clone();
        let y = f.dst.clone();
        let keys = canonical_keys(h, g, f);
        let (ch, cg, cf) = rebuild(&x, &y, &keys)?;
        Ok(Bispan {
            src: x,
            dst: y,
            keys,
            h: ch,
            g: cg,
            f: cf,
        })
    }

    pub fn identity(x: &GSet) -> Bispan {
        let id = GMap::identity(x);
        Bispan::from_legs(&id, &id, &id).expect("identity legs share objects")
    }

    /// Rebuild a bispan from endpoint objects and piece codes (the
    /// canonical-form JSON surface). The codes are re-canonicalized, so a
    /// permuted or non-minimal code list yields the same morphism.
    pub fn from_keys(x: &GSet, y: &GSet, keys: &[PieceKey]) -> Result<Bispan> {
        let (h, g, f) = rebuild(x, y, keys)?;
        Bispan::from_legs(&h, &g, &f)
    }

    /// Transfer generator T_f = [X ← X → X → Y].
    pub fn transfer(f: &GMap) -> Bispan {
        let id = GMap::identity(&f.src);
        Bispan::from_legs(&id, &id, f).expect("generator legs")
    }

    /// Norm generator N_f = [X ← X → Y → Y].
    pub fn norm(f: &GMap) -> Bispan {
        let id_src = GMap::identity(&f.src);
        let id_dst = GMap::identity(&f.dst);
        Bispan::from_legs(&id_src, f, &id_dst).expect("generator legs")
    }

    /// Restriction generator R_f = [Y ← X → X → X], a morphism Y → X.
    pub fn restriction(f: &GMap) -> Bispan {
        let id = GMap::identity(&f.src);
        Bispan::from_legs(f, &id, &id).expect("generator legs")
    }

    pub fn src(&self) -> &GSet {
        &self.src
    }

    pub fn dst(&self) -> &GSet {
        &self.dst
    }

    pub fn keys(&self) -> &[PieceKey] {
        &self.keys
    }

    /// Canonical legs (h: A→X, g: A→B, f: B→Y).
    pub fn legs(&self) -> (&GMap, &GMap, &GMap) {
        (&self.h, &self.g, &self.f)
    }

    /// self ∘ first : X → Z for first: X → Y and self: Y → Z.
    pub fn compose(&self, first: &Bispan) -> Result<Bispan> {
        self.compose_with_guard(first, DEFAULT_SIZE_GUARD)
    }

    pub fn compose_with_guard(&self, first: &Bispan, guard: usize) -> Result<Bispan> {
        if first.dst != self.src {
            return Err(Error::Mismatch(
                "bispan composition: codomain of the first factor differs from domain of the second"
                    .into(),
            ));
        }
        let (h1, g1, f1) = first.legs();
        let (h2, g2, f2) = self.legs();
        // R_{h2} ∘ T_{f1}: pullback square over Y.
        let (w, w_to_b1, w_to_a2) = pullback(f1, h2)?;
        if w.len() > guard {
            return Err(Error::CapExceeded("composition middle object too large".into()));
        }
        // N_{g2} ∘ T_{f1'}: dependent product of f1' = W → A2 along g2.
        let dp = dependent_product(&w_to_a2, g2, guard)?;
        let p_map = &dp.proj; // P → B2
        let q_top = &dp.top; // Q → P
        let eps = &dp.counit; // Q → W
        // R_ε ∘ R_{h2'} = R_{h2'∘ε}: Q → B1.
        let q_to_b1 = w_to_b1.compose(eps)?;
        // R_{h2'∘ε} ∘ N_{g1}: pullback square over B1.
        let (v, v_to_a1, v_to_q) = pullback(g1, &q_to_b1)?;
        if v.len() > guard {
            return Err(Error::CapExceeded("composition middle object too large".into()));
        }
        // Assemble T_{f2∘p} N_{q∘g1'} R_{h1∘m}.
        let h = h1.compose(&v_to_a1)?;
        let g = q_top.compose(&v_to_q)?;
        let f = f2.compose(p_map)?;
        Bispan::from_legs(&h, &g, &f)
    }

    /// Textual form `X <-h- A -g-> B -f-> Y` with orbit-type annotations.
    pub fn pretty(&self, lat: &SubgroupLattice) -> Result<String> {
        Ok(format!(
            "{} <-h- {} -g-> {} -f-> {}",
            orbit_type_string(&self.src, lat)?,
            orbit_type_string(&self.h.src, lat)?,
            orbit_type_string(&self.f.src, lat)?,
            orbit_type_string(&self.dst, lat)?
        ))
    }
}

pub fn orbit_type_string(x: &GSet, lat: &SubgroupLattice) -> Result<String> {
    let ty = x.orbit_type(lat)?;
    if ty.is_empty() {
        return Ok("0".into());
    }
    let parts: Vec<String> = ty
        .iter()
        .map(|(class, mult)| {
            let name = lat.class_name(*class);
            if *mult == 1 {
                format!("[G/{name}]")
            } else {
                format!("{mult}[G/{name}]")
            }
        })
        .collect();
    Ok(parts.join(" + "))
}

fn canonical_keys(h: &GMap, g: &GMap, f: &GMap) -> Vec<PieceKey> {
    let b_set = &g.dst;
    let a_set = &g.src;
    let group = b_set.group();
    let g_fibers = g.fibers();
    let mut keys: Vec<PieceKey> = Vec::new();
    for orbit in b_set.orbits() {
        let mut best: Option<PieceKey> = None;
        for &b in &orbit {
            let s_mask = b_set.stabilizer(b);
            let fiber = &g_fibers[b];
            // S-orbits of the fiber.
            let mut remaining: Vec<usize> = fiber.clone();
            let mut fiber_keys: Vec<FiberOrbitKey> = Vec::new();
            while let Some(&start) = remaining.first() {
                // Collect the S-orbit of `start` inside the fiber.
                let mut s_orbit = vec![start];
                let mut i = 0;
                while i < s_orbit.len() {
                    let a = s_orbit[i];
                    i += 1;
                    for s in mask_elements(s_mask) {
                        let moved = a_set.act(s, a);
                        if !s_orbit.contains(&moved) {
                            s_orbit.push(moved);
                        }
                    }
                }
                remaining.retain(|p| !s_orbit.contains(p));
                let key = s_orbit
                    .iter()
                    .map(|&a| FiberOrbitKey {
                        stab: mask_elements(s_mask & a_set.stabilizer(a)).collect(),
                        x: h.apply(a),
                    })
                    .min()
                    .expect("nonempty orbit");
                fiber_keys.push(key);
            }
            fiber_keys.sort();
            let candidate = PieceKey {
                stab: mask_elements(s_mask).collect(),
                y: f.apply(b),
                fiber: fiber_keys,
            };
            if best.as_ref().map_or(true, |cur| candidate < *cur) {
                best = Some(candidate);
            }
        }
        keys.push(best.expect("nonempty orbit"));
        let _ = group;
    }
    keys.sort();
    keys
}

fn mask_of(elems: &[usize]) -> Mask {
    elems.iter().fold(0, |m, &e| m | (1 << e))
}

/// Rebuild the canonical representative diagram from piece codes.
fn rebuild(x: &GSet, y: &GSet, keys: &[PieceKey]) -> Result<(GMap, GMap, GMap)> {
    let group = x.group().clone();
    let n_g = group.order();

    // B first: one coset block per piece.
    let mut b_offsets = Vec::with_capacity(keys.len());
    let mut b_total = 0usize;
    let mut b_transversals = Vec::with_capacity(keys.len());
    for key in keys {
        let s = mask_of(&key.stab);
        let reps = group.left_transversal(s);
        b_offsets.push(b_total);
        b_total += reps.len();
        b_transversals.push((s, reps));
    }
    let mut b_act = vec![0usize; n_g * b_total];
    let mut f_vec = vec![0usize; b_total];
    for (pi, key) in keys.iter().enumerate() {
        let (s, reps) = &b_transversals[pi];
        let coset_of = |e: usize| -> usize {
            reps.iter()
                .position(|&r| crate::groups::mask_contains(*s, group.mul(group.inv(r), e)))
                .expect("coset cover")
        };
        for (j, &t) in reps.iter().enumerate() {
            f_vec[b_offsets[pi] + j] = y.act(t, key.y);
            for a in group.elements() {
                b_act[a * b_total + b_offsets[pi] + j] = b_offsets[pi] + coset_of(group.mul(a, t));
            }
        }
    }
    let b_set = GSet::new(group.clone(), b_total, b_act)?;

    // A: one coset block per fiber orbit of each piece.
    struct ABlock {
        u: Mask,
        reps: Vec<usize>,
        piece: usize,
        x_pt: usize,
    }
    let mut blocks: Vec<ABlock> = Vec::new();
    for (pi, key) in keys.iter().enumerate() {
        for fk in &key.fiber {
            let u = mask_of(&fk.stab);
            blocks.push(ABlock {
                u,
                reps: group.left_transversal(u),
                piece: pi,
                x_pt: fk.x,
            });
        }
    }
    let mut a_offsets = Vec::with_capacity(blocks.len());
    let mut a_total = 0usize;
    for blk in &blocks {
        a_offsets.push(a_total);
        a_total += blk.reps.len();
    }
    let mut a_act = vec![0usize; n_g * a_total];
    let mut h_vec = vec![0usize; a_total];
    let mut g_vec = vec![0usize; a_total];
    for (bi, blk) in blocks.iter().enumerate() {
        let coset_of = |e: usize| -> usize {
            blk.reps
                .iter()
                .position(|&r| crate::groups::mask_contains(blk.u, group.mul(group.inv(r), e)))
                .expect("coset cover")
        };
        let (s, s_reps) = &b_transversals[blk.piece];
        let s_coset_of = |e: usize| -> usize {
            s_reps
                .iter()
                .position(|&r| crate::groups::mask_contains(*s, group.mul(group.inv(r), e)))
                .expect("coset cover")
        };
        for (j, &t) in blk.reps.iter().enumerate() {
            h_vec[a_offsets[bi] + j] = x.act(t, blk.x_pt);
            g_vec[a_offsets[bi] + j] = b_offsets[blk.piece] + s_coset_of(t);
            for a in group.elements() {
                a_act[a * a_total + a_offsets[bi] + j] = a_offsets[bi] + coset_of(group.mul(a, t));
            }
        }
    }
    let a_set = GSet::new(group, a_total, a_act)?;

    let h = GMap::new(a_set.clone(), x.clone(), h_vec)?;
    let g = GMap::new(a_set, b_set.clone(), g_vec)?;
    let f = GMap::new(b_set, y.clone(), f_vec)?;
    Ok((h, g, f))
}
