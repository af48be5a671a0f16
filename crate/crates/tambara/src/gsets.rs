//! Finite G-sets and equivariant maps, with the limit gadgets the bispan
//! category needs: orbit decomposition, pullbacks, dependent products,
//! coproducts, and isomorphism testing via canonical forms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::groups::{mask_contains, FiniteGroup, Mask, SubgroupLattice};
use crate::rng::SplitMix64;

/// Hard ceiling on dependent-product sizes: sections over an n-point fiber
/// with k-point preimages number k^n.
pub const DEFAULT_SIZE_GUARD: usize = 100_000;

#[derive(Debug)]
struct GSetData {
    group: Arc<FiniteGroup>,
    n: usize,
    /// act[g * n + x] = g·x
    act: Vec<usize>,
}

/// A finite G-set. Cloning is cheap (shared data).
#[derive(Debug, Clone)]
pub struct GSet {
    data: Arc<GSetData>,
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.data, &other.data) {
            return true;
        }
        self.data.n == other.data.n
            && self.data.act == other.data.act
            && self.data.group == other.data.group
    }
}
impl Eq for GSet {}

impl GSet {
    pub fn new(group: Arc<FiniteGroup>, n: usize, act: Vec<usize>) -> Result<Self> {
        if act.len() != group.order() * n {
            return Err(Error::Structure("action table has wrong size".into()));
        }
        if act.iter().any(|&x| x >= n) {
            return Err(Error::Structure("action table entry out of range".into()));
        }
        let s = GSet {
            data: Arc::new(GSetData { group, n, act }),
        };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let g = self.group();
        for x in 0..self.len() {
            if self.act(g.id(), x) != x {
                return Err(Error::Structure("identity does not act trivially".into()));
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                for x in 0..self.len() {
                    if self.act(a, self.act(b, x)) != self.act(ab, x) {
                        return Err(Error::Structure(format!(
                            "action violates group law at ({},{},{x})",
                            g.label(a),
                            g.label(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.data.group
    }

    pub fn len(&self) -> usize {
        self.data.n
    }

    pub fn is_empty(&self) -> bool {
        self.data.n == 0
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.data.act[g * self.data.n + x]
    }

    pub fn empty(group: Arc<FiniteGroup>) -> GSet {
        GSet {
            data: Arc::new(GSetData {
                group,
                n: 0,
                act: Vec::new(),
            }),
        }
    }

    /// Single fixed point.
    pub fn point(group: Arc<FiniteGroup>) -> GSet {
        let n = group.order();
        GSet {
            data: Arc::new(GSetData {
                group,
                n: 1,
                act: vec![0; n],
            }),
        }
    }

    /// The orbit G/H for a subgroup mask; points are the left cosets in
    /// transversal order (identity coset first).
    pub fn orbit(group: Arc<FiniteGroup>, h: Mask) -> Result<GSet> {
        if !group.is_subgroup(h) {
            return Err(Error::NotASubgroup("orbit".into()));
        }
        let reps = group.left_transversal(h);
        let n = reps.len();
        let coset_of = |x: usize| -> usize {
            reps.iter()
                .position(|&r| mask_contains(h, group.mul(group.inv(r), x)))
                .expect("element lies in some coset")
        };
        let mut act = vec![0usize; group.order() * n];
        for g in group.elements() {
            for (j, &r) in reps.iter().enumerate() {
                act[g * n + j] = coset_of(group.mul(g, r));
            }
        }
        Ok(GSet {
            data: Arc::new(GSetData { group, n, act }),
        })
    }

    /// Disjoint union; returns the two point injections.
    pub fn disjoint_union(&self, other: &GSet) -> Result<(GSet, Vec<usize>, Vec<usize>)> {
        if self.group() != other.group() {
            return Err(Error::Mismatch("disjoint union over different groups".into()));
        }
        let group = self.group().clone();
        let n = self.len() + other.len();
        let mut act = vec![0usize; group.order() * n];
        for g in group.elements() {
            for x in 0..self.len() {
                act[g * n + x] = self.act(g, x);
            }
            for y in 0..other.len() {
                act[g * n + self.len() + y] = self.len() + other.act(g, y);
            }
        }
        let inj1 = (0..self.len()).collect();
        let inj2 = (0..other.len()).map(|y| self.len() + y).collect();
        Ok((
            GSet {
                data: Arc::new(GSetData { group, n, act }),
            },
            inj1,
            inj2,
        ))
    }

    pub fn stabilizer(&self, x: usize) -> Mask {
        let g = self.group();
        let mut mask = 0;
        for a in g.elements() {
            if self.act(a, x) == x {
                mask |= 1 << a;
            }
        }
        mask
    }

    /// Orbits as sorted point lists, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in 0..self.len() {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self
                .group()
                .elements()
                .map(|g| self.act(g, x))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &p in &orbit {
                seen[p] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// For each point, some group element carrying the orbit's smallest
    /// point to it.
    pub fn transporter_from_min(&self) -> Vec<usize> {
        let g = self.group();
        let mut out = vec![usize::MAX; self.len()];
        for orbit in self.orbits() {
            let base = orbit[0];
            for a in g.elements() {
                let y = self.act(a, base);
                if out[y] == usize::MAX {
                    out[y] = a;
                }
            }
        }
        out
    }

    /// Orbit decomposition with stabilizer classes and explicit
    /// reassembly data: for each orbit, a base point whose stabilizer is
    /// exactly the canonical class representative, plus the points listed in
    /// transversal order (so coset j of G/rep ↦ points[j]).
    pub fn orbit_decompose(&self, lat: &SubgroupLattice) -> Result<Vec<OrbitInfo>> {
        if !Arc::ptr_eq(lat.group(), self.group()) && lat.group() != self.group() {
            return Err(Error::Mismatch("lattice for a different group".into()));
        }
        let g = self.group();
        let mut out = Vec::new();
        for orbit in self.orbits() {
            let class = lat.class_of_mask(self.stabilizer(orbit[0]))?;
            let rep = lat.rep(class);
            let base = *orbit
                .iter()
                .find(|&&p| self.stabilizer(p) == rep)
                .expect("every stabilizer conjugate is realized in the orbit");
            let reps = g.left_transversal(rep);
            let points_by_coset: Vec<usize> = reps.iter().map(|&t| self.act(t, base)).collect();
            out.push(OrbitInfo {
                class,
                base,
                points_by_coset,
            });
        }
        Ok(out)
    }

    /// Multiset of (class, multiplicity) in class order.
    pub fn orbit_type(&self, lat: &SubgroupLattice) -> Result<Vec<(usize, usize)>> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for o in self.orbit_decompose(lat)? {
            *counts.entry(o.class).or_insert(0) += 1;
        }
        Ok(counts.into_iter().collect())
    }

    /// Canonical relabeling: orbits sorted by stabilizer class (then block
    /// content, which is identical for identical types), with each orbit
    /// written in coset order of its class representative. Returns the new
    /// G-set and the old→new point map.
    pub fn canonical_form(&self, lat: &SubgroupLattice) -> Result<(GSet, Vec<usize>)> {
        let mut infos = self.orbit_decompose(lat)?;
        infos.sort_by_key(|o| o.class);
        let group = self.group().clone();
        let n = self.len();
        let mut old_to_new = vec![usize::MAX; n];
        let mut next = 0;
        for info in &infos {
            for &p in &info.points_by_coset {
                old_to_new[p] = next;
                next += 1;
            }
        }
        let mut act = vec![0usize; group.order() * n];
        for g in group.elements() {
            for x in 0..n {
                act[g * n + old_to_new[x]] = old_to_new[self.act(g, x)];
            }
        }
        Ok((
            GSet {
                data: Arc::new(GSetData { group, n, act }),
            },
            old_to_new,
        ))
    }
}

/// One orbit of a decomposition: its stabilizer class, a base point whose
/// stabilizer is exactly the class representative, and the points listed in
/// transversal (coset) order.
#[derive(Debug, Clone)]
pub struct OrbitInfo {
    pub class: usize,
    pub base: usize,
    pub points_by_coset: Vec<usize>,
}

/// An equivariant map of G-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMap {
    pub src: GSet,
    pub dst: GSet,
    pub f: Vec<usize>,
}

impl GMap {
    pub fn new(src: GSet, dst: GSet, f: Vec<usize>) -> Result<Self> {
        if src.group() != dst.group() {
            return Err(Error::Mismatch("map between different groups".into()));
        }
        if f.len() != src.len() {
            return Err(Error::Structure("map table has wrong size".into()));
        }
        for &y in &f {
            if y >= dst.len() {
                return Err(Error::Structure("map value out of range".into()));
            }
        }
        let g = src.group();
        for a in g.elements() {
            for x in 0..src.len() {
                if f[src.act(a, x)] != dst.act(a, f[x]) {
                    return Err(Error::Structure(format!(
                        "map is not equivariant at ({},{x})",
                        g.label(a)
                    )));
                }
            }
        }
        Ok(GMap { src, dst, f })
    }

    pub fn identity(x: &GSet) -> GMap {
        GMap {
            src: x.clone(),
            dst: x.clone(),
            f: (0..x.len()).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.f[x]
    }

    /// self ∘ other.
    pub fn compose(&self, other: &GMap) -> Result<GMap> {
        if other.dst != self.src {
            return Err(Error::Mismatch("composition endpoints differ".into()));
        }
        Ok(GMap {
            src: other.src.clone(),
            dst: self.dst.clone(),
            f: other.f.iter().map(|&x| self.f[x]).collect(),
        })
    }

    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.dst.len()];
        for (x, &y) in self.f.iter().enumerate() {
            out[y].push(x);
        }
        out
    }

    /// The unique map to the one-point G-set.
    pub fn terminal(x: &GSet, pt: &GSet) -> Result<GMap> {
        if pt.len() != 1 {
            return Err(Error::Precondition("target is not a point".into()));
        }
        GMap::new(x.clone(), pt.clone(), vec![0; x.len()])
    }

    /// All equivariant maps src → dst.
    pub fn enumerate_all(src: &GSet, dst: &GSet) -> Result<Vec<GMap>> {
        if src.group() != dst.group() {
            return Err(Error::Mismatch("different groups".into()));
        }
        let orbits = src.orbits();
        let transporter = src.transporter_from_min();
        // Candidate images for each orbit's base point.
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        for orbit in &orbits {
            let stab = src.stabilizer(orbit[0]);
            let cands: Vec<usize> = (0..dst.len())
                .filter(|&q| {
                    let qstab = dst.stabilizer(q);
                    stab & qstab == stab
                })
                .collect();
            if cands.is_empty() {
                return Ok(Vec::new());
            }
            candidates.push(cands);
        }
        let mut out = Vec::new();
        let mut choice = vec![0usize; orbits.len()];
        loop {
            let mut f = vec![0usize; src.len()];
            for (oi, orbit) in orbits.iter().enumerate() {
                let q = candidates[oi][choice[oi]];
                for &p in orbit {
                    f[p] = dst.act(transporter[p], q);
                }
            }
            out.push(GMap {
                src: src.clone(),
                dst: dst.clone(),
                f,
            });
            let mut pos = 0;
            loop {
                if pos == orbits.len() {
                    return Ok(out);
                }
                choice[pos] += 1;
                if choice[pos] < candidates[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if orbits.is_empty() {
                return Ok(out);
            }
        }
    }

    /// A uniformly random equivariant map, if any exists.
    pub fn random(src: &GSet, dst: &GSet, rng: &mut SplitMix64) -> Option<GMap> {
        let orbits = src.orbits();
        let transporter = src.transporter_from_min();
        let mut f = vec![0usize; src.len()];
        for orbit in &orbits {
            let stab = src.stabilizer(orbit[0]);
            let cands: Vec<usize> = (0..dst.len())
                .filter(|&q| stab & dst.stabilizer(q) == stab)
                .collect();
            if cands.is_empty() {
                return None;
            }
            let q = cands[rng.below(cands.len())];
            for &p in orbit {
                f[p] = dst.act(transporter[p], q);
            }
        }
        Some(GMap {
            src: src.clone(),
            dst: dst.clone(),
            f,
        })
    }
}

/// Pullback X ×_Z Y of f: X→Z and g: Y→Z; points are the pairs (x, y) with
/// f(x) = g(y) in lexicographic order. Returns (P, P→X, P→Y).
pub fn pullback(f: &GMap, g: &GMap) -> Result<(GSet, GMap, GMap)> {
    if f.dst != g.dst {
        return Err(Error::Mismatch("pullback legs have different codomains".into()));
    }
    let group = f.src.group().clone();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for x in 0..f.src.len() {
        for y in 0..g.src.len() {
            if f.apply(x) == g.apply(y) {
                pairs.push((x, y));
            }
        }
    }
    let index: BTreeMap<(usize, usize), usize> = pairs
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i))
        .collect();
    let n = pairs.len();
    let mut act = vec![0usize; group.order() * n];
    for a in group.elements() {
        for (i, &(x, y)) in pairs.iter().enumerate() {
            let moved = (f.src.act(a, x), g.src.act(a, y));
            act[a * n + i] = index[&moved];
        }
    }
    let p = GSet {
        data: Arc::new(GSetData { group, n, act }),
    };
    let to_x = GMap {
        src: p.clone(),
        dst: f.src.clone(),
        f: pairs.iter().map(|&(x, _)| x).collect(),
    };
    let to_y = GMap {
        src: p.clone(),
        dst: g.src.clone(),
        f: pairs.iter().map(|&(_, y)| y).collect(),
    };
    Ok((p, to_x, to_y))
}

/// The dependent product Π_f g of g: A→X along f: X→Y, with the pieces the
/// norm–transfer distributor needs.
#[derive(Debug, Clone)]
pub struct DependentProduct {
    /// Π_f g → Y.
    pub proj: GMap,
    /// The pullback object Q = f*(Π_f g) with its two legs.
    pub to_x: GMap,
    /// Q → Π_f g (the distributor's pullback leg).
    pub top: GMap,
    /// Counit ε: Q → A over X.
    pub counit: GMap,
}

/// Points of Π_f g over y ∈ Y are sections t of g on the fiber f⁻¹(y);
/// the action is (y, t) ↦ (gy, x ↦ g·t(g⁻¹x)). Sections over y are indexed
/// in mixed radix over the g-preimages of the fiber points, so every
/// lookup is arithmetic.
pub fn dependent_product(g: &GMap, f: &GMap, guard: usize) -> Result<DependentProduct> {
    if g.dst != f.src {
        return Err(Error::Mismatch(
            "dependent product: object must live over the base of f".into(),
        ));
    }
    let group = f.src.group().clone();
    let y_size = f.dst.len();
    let f_fibers = f.fibers();
    let g_fibers = g.fibers();

    // Section-block sizes per y, with the guard applied before anything is
    // materialized.
    let mut block: Vec<usize> = Vec::with_capacity(y_size);
    let mut offset: Vec<usize> = Vec::with_capacity(y_size);
    let mut total: usize = 0;
    for fib in &f_fibers {
        let mut prod: usize = 1;
        for &x in fib {
            prod = prod.saturating_mul(g_fibers[x].len());
            if prod > guard {
                return Err(Error::CapExceeded(format!(
                    "dependent product exceeds size guard {guard}"
                )));
            }
        }
        offset.push(total);
        block.push(prod);
        total = total.saturating_add(prod);
        if total > guard {
            return Err(Error::CapExceeded(format!(
                "dependent product exceeds size guard {guard}"
            )));
        }
    }
    // Position of each base point within its f-fiber, and of each total
    // point within its g-fiber.
    let mut pos_in_f_fiber = vec![0usize; f.src.len()];
    for fib in &f_fibers {
        for (j, &x) in fib.iter().enumerate() {
            pos_in_f_fiber[x] = j;
        }
    }
    let mut pos_in_g_fiber = vec![0usize; g.src.len()];
    for fib in &g_fibers {
        for (j, &a) in fib.iter().enumerate() {
            pos_in_g_fiber[a] = j;
        }
    }
    let n = total;
    // Decode digit d_j of point i over y: value at fiber point fib[j] is
    // g_fibers[fib[j]][d_j].
    let y_of = {
        let mut v = Vec::with_capacity(n);
        for (y, &b) in block.iter().enumerate() {
            for _ in 0..b {
                v.push(y);
            }
        }
        v
    };
    let digits_of = |i: usize| -> (usize, Vec<usize>) {
        let y = y_of[i];
        let mut rest = i - offset[y];
        let fib = &f_fibers[y];
        let mut ds = Vec::with_capacity(fib.len());
        for &x in fib {
            let r = g_fibers[x].len();
            ds.push(rest % r);
            rest /= r;
        }
        (y, ds)
    };
    let value_at = |ds: &[usize], x: usize| -> usize {
        g_fibers[x][ds[pos_in_f_fiber[x]]]
    };
    let mut act = vec![0usize; group.order() * n];
    for a in group.elements() {
        let ainv = group.inv(a);
        for i in 0..n {
            let (y, ds) = digits_of(i);
            let ny = f.dst.act(a, y);
            // Encode the moved section over ny in mixed radix.
            let mut idx = 0usize;
            for &x in f_fibers[ny].iter().rev() {
                let pre = f.src.act(ainv, x);
                let v = g.src.act(a, value_at(&ds, pre));
                idx = idx * g_fibers[x].len() + pos_in_g_fiber[v];
            }
            act[a * n + i] = offset[ny] + idx;
        }
    }
    let pi_set = GSet {
        data: Arc::new(GSetData {
            group: group.clone(),
            n,
            act,
        }),
    };
    let proj = GMap {
        src: pi_set.clone(),
        dst: f.dst.clone(),
        f: y_of.clone(),
    };

    // Q = X ×_Y Π, with counit (x, (y,t)) ↦ t(x).
    let (q, to_x, top) = pullback(f, &proj)?;
    if q.len() > guard {
        return Err(Error::CapExceeded(format!(
            "distributor pullback exceeds size guard {guard}"
        )));
    }
    let counit_f: Vec<usize> = (0..to_x.src.len())
        .map(|qi| {
            let x = to_x.apply(qi);
            let pi = top.apply(qi);
            let (_, ds) = digits_of(pi);
            value_at(&ds, x)
        })
        .collect();
    let counit = GMap {
        src: to_x.src.clone(),
        dst: g.src.clone(),
        f: counit_f,
    };
    Ok(DependentProduct {
        proj,
        to_x,
        top,
        counit,
    })
}

/// Equivariant bijection X → Y together with orbit matching, if the orbit
/// types agree.
pub fn gset_iso(x: &GSet, y: &GSet, lat: &SubgroupLattice) -> Result<Option<Vec<usize>>> {
    if x.group() != y.group() {
        return Err(Error::Mismatch("different groups".into()));
    }
    if x.len() != y.len() {
        return Ok(None);
    }
    let mut xo = x.orbit_decompose(lat)?;
    let mut yo = y.orbit_decompose(lat)?;
    xo.sort_by_key(|o| o.class);
    yo.sort_by_key(|o| o.class);
    if xo.iter().map(|o| o.class).collect::<Vec<_>>()
        != yo.iter().map(|o| o.class).collect::<Vec<_>>()
    {
        return Ok(None);
    }
    let mut map = vec![usize::MAX; x.len()];
    for (ox, oy) in xo.iter().zip(yo.iter()) {
        for (j, &p) in ox.points_by_coset.iter().enumerate() {
            map[p] = oy.points_by_coset[j];
        }
    }
    Ok(Some(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn lat_of(g: &Arc<FiniteGroup>) -> SubgroupLattice {
        SubgroupLattice::new(g.clone())
    }

    #[test]
    fn orbit_of_subgroup() {
        let g = c2();
        let lat = lat_of(&g);
        // G/e is free transitive: one orbit with trivial stabilizer.
        let free = GSet::orbit(g.clone(), g.id_mask()).unwrap();
        let dec = free.orbit_decompose(&lat).unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[0].class, lat.bottom());
        // G/G is a fixed point.
        let pt = GSet::orbit(g.clone(), g.full_mask()).unwrap();
        assert_eq!(pt.len(), 1);
    }

    #[test]
    fn s3_natural_action_stabilizer() {
        // S3 on {1,2,3}: stabilizer of a point has order 2.
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let lat = lat_of(&s3);
        // Build the natural action from the permutation realization: the
        // orbit of the order-2 class representative is S3/C2 ≅ {1,2,3}.
        let c2rep = lat.classes()[1].rep;
        let x = GSet::orbit(s3.clone(), c2rep).unwrap();
        assert_eq!(x.len(), 3);
        let dec = x.orbit_decompose(&lat).unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(lat.classes()[dec[0].class].order, 2);
    }

    #[test]
    fn pullback_over_point_is_product() {
        let g = c2();
        let free = GSet::orbit(g.clone(), g.id_mask()).unwrap();
        let pt = GSet::point(g.clone());
        let f = GMap::terminal(&free, &pt).unwrap();
        let (p, _, _) = pullback(&f, &f).unwrap();
        // C2/e × C2/e has 4 points in two free orbits.
        assert_eq!(p.len(), 4);
        assert_eq!(p.orbits().len(), 2);
    }

    #[test]
    fn pullback_of_identity() {
        let g = c2();
        let free = GSet::orbit(g.clone(), g.id_mask()).unwrap();
        let pt = GSet::point(g.clone());
        let f = GMap::terminal(&free, &pt).unwrap();
        let idm = GMap::identity(&pt);
        let (p, to_x, _) = pullback(&f, &idm).unwrap();
        assert_eq!(p.len(), free.len());
        // to_x is a bijection.
        let mut seen = vec![false; free.len()];
        for i in 0..p.len() {
            seen[to_x.apply(i)] = true;
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn dependent_product_identity_cases() {
        let g = c2();
        let free = GSet::orbit(g.clone(), g.id_mask()).unwrap();
        let pt = GSet::point(g.clone());
        let f = GMap::terminal(&free, &pt).unwrap();
        // f = identity ⇒ Π_f g ≅ g (one-point fibers, unique section each).
        let gmap = GMap::identity(&free);
        let dp = dependent_product(&gmap, &GMap::identity(&free), DEFAULT_SIZE_GUARD).unwrap();
        assert_eq!(dp.proj.src.len(), free.len());
        // g = identity ⇒ Π_f id ≅ id_Y (unique empty-choice section).
        let dp2 = dependent_product(&GMap::identity(&free), &f, DEFAULT_SIZE_GUARD).unwrap();
        assert_eq!(dp2.proj.src.len(), 1);
    }

    #[test]
    fn dependent_product_fold_example() {
        // G = C2, f: C2/e → C2/C2, g: fold C2/e ⊔ C2/e → C2/e.
        // Π has 4 points: 2 fixed + 1 free orbit.
        let g = c2();
        let free = GSet::orbit(g.clone(), g.id_mask()).unwrap();
        let pt = GSet::point(g.clone());
        let f = GMap::terminal(&free, &pt).unwrap();
        let (two_free, i1, i2) = free.disjoint_union(&free).unwrap();
        let mut fold = vec![0usize; two_free.len()];
        for x in 0..free.len() {
            fold[i1[x]] = x;
            fold[i2[x]] = x;
        }
        let gmap = GMap::new(two_free, free.clone(), fold).unwrap();
        let dp = dependent_product(&gmap, &f, DEFAULT_SIZE_GUARD).unwrap();
        let pi = &dp.proj.src;
        assert_eq!(pi.len(), 4);
        let orbits = pi.orbits();
        let sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        let fixed = sizes.iter().filter(|&&s| s == 1).count();
        let free_orbits = sizes.iter().filter(|&&s| s == 2).count();
        assert_eq!((fixed, free_orbits), (2, 1));
    }

    #[test]
    fn section_count_formula() {
        // |Π_f g over y| = ∏ over fiber points of |g⁻¹(a)|.
        let g = Arc::new(FiniteGroup::cyclic(3));
        let free = GSet::orbit(g.clone(), g.id_mask()).unwrap();
        let pt = GSet::point(g.clone());
        let f = GMap::terminal(&free, &pt).unwrap();
        let (dbl, i1, i2) = free.disjoint_union(&free).unwrap();
        let mut fold = vec![0usize; dbl.len()];
        for x in 0..free.len() {
            fold[i1[x]] = x;
            fold[i2[x]] = x;
        }
        let gmap = GMap::new(dbl, free.clone(), fold).unwrap();
        let dp = dependent_product(&gmap, &f, DEFAULT_SIZE_GUARD).unwrap();
        assert_eq!(dp.proj.src.len(), 2usize.pow(3));
    }

    #[test]
    fn adjunction_bijection_counts() {
        // |GMaps(f*h, g)| = |GMaps(h, Π_f g)| as maps over the respective
        // bases, checked by exhaustive enumeration on small inputs.
        let grp = c2();
        let free = GSet::orbit(grp.clone(), grp.id_mask()).unwrap();
        let pt = GSet::point(grp.clone());
        let f = GMap::terminal(&free, &pt).unwrap();
        let (dbl, i1, i2) = free.disjoint_union(&free).unwrap();
        let mut fold = vec![0usize; dbl.len()];
        for x in 0..free.len() {
            fold[i1[x]] = x;
            fold[i2[x]] = x;
        }
        let g = GMap::new(dbl.clone(), free.clone(), fold).unwrap();
        // h: a G-set over Y = pt; take h = id on a 2-point free orbit ⊔ pt.
        let (hset, _, _) = free.disjoint_union(&pt).unwrap();
        let h = GMap::terminal(&hset, &pt).unwrap();
        let dp = dependent_product(&g, &f, DEFAULT_SIZE_GUARD).unwrap();

        // Left side: maps f*h → g over X.
        let (fh, fh_to_x, _) = pullback(&f, &h).unwrap();
        let lhs = GMap::enumerate_all(&fh, &g.src)
            .unwrap()
            .into_iter()
            .filter(|m| {
                // over X: g ∘ m = projection fh → X
                (0..fh.len()).all(|i| g.apply(m.apply(i)) == fh_to_x.apply(i))
            })
            .count();
        // Right side: maps h → Π_f g over Y.
        let rhs = GMap::enumerate_all(&hset, &dp.proj.src)
            .unwrap()
            .into_iter()
            .filter(|m| (0..hset.len()).all(|i| dp.proj.apply(m.apply(i)) == h.apply(i)))
            .count();
        assert_eq!(lhs, rhs);
        assert!(lhs > 0);
    }

    #[test]
    fn iso_and_canonical_form() {
        let g = c2();
        let lat = lat_of(&g);
        let free = GSet::orbit(g.clone(), g.id_mask()).unwrap();
        let pt = GSet::point(g.clone());
        // X vs X: identity works.
        assert!(gset_iso(&free, &free, &lat).unwrap().is_some());
        // Free orbit vs two fixed points: no iso.
        let (two_pts, _, _) = pt.disjoint_union(&pt).unwrap();
        assert!(gset_iso(&free, &two_pts, &lat).unwrap().is_none());
        // Canonical form is stable under relabeling: two free orbits laid
        // out contiguously vs interleaved.
        let contiguous = GSet::new(g.clone(), 4, vec![0, 1, 2, 3, 1, 0, 3, 2]).unwrap();
        let interleaved = GSet::new(g.clone(), 4, vec![0, 1, 2, 3, 2, 3, 0, 1]).unwrap();
        let (c1, _) = contiguous.canonical_form(&lat).unwrap();
        let (c2_, _) = interleaved.canonical_form(&lat).unwrap();
        assert_eq!(c1, c2_);
    }

    #[test]
    fn conjugate_orbits_isomorphic() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let lat = lat_of(&s3);
        let members = lat.classes()[1].members.clone();
        assert!(members.len() >= 2);
        let x = GSet::orbit(s3.clone(), members[0]).unwrap();
        let y = GSet::orbit(s3.clone(), members[1]).unwrap();
        assert!(gset_iso(&x, &y, &lat).unwrap().is_some());
    }

    #[test]
    fn empty_gset_supported() {
        let g = c2();
        let lat = lat_of(&g);
        let e = GSet::empty(g.clone());
        assert!(e.orbit_decompose(&lat).unwrap().is_empty());
        let pt = GSet::point(g.clone());
        let m = GMap::new(e.clone(), pt, vec![]).unwrap();
        assert_eq!(m.fibers().len(), 1);
    }

    #[test]
    fn pullback_universal_property() {
        // Exhaustive cone enumeration: every cone over (f, g) factors
        // uniquely through the pullback.
        let grp = Arc::new(FiniteGroup::cyclic(2));
        let lat = lat_of(&grp);
        let free = GSet::orbit(grp.clone(), grp.id_mask()).unwrap();
        let pt = GSet::point(grp.clone());
        let (mixed, _, _) = free.disjoint_union(&pt).unwrap();
        let f = GMap::terminal(&mixed, &pt).unwrap();
        let g = GMap::terminal(&free, &pt).unwrap();
        let (p, to_x, to_y) = pullback(&f, &g).unwrap();
        for w in [free.clone(), mixed.clone(), pt.clone()] {
            for u in GMap::enumerate_all(&w, &mixed).unwrap() {
                for v in GMap::enumerate_all(&w, &free).unwrap() {
                    let cone = (0..w.len()).all(|i| f.apply(u.apply(i)) == g.apply(v.apply(i)));
                    if !cone {
                        continue;
                    }
                    let mediating: Vec<GMap> = GMap::enumerate_all(&w, &p)
                        .unwrap()
                        .into_iter()
                        .filter(|m| {
                            (0..w.len()).all(|i| {
                                to_x.apply(m.apply(i)) == u.apply(i)
                                    && to_y.apply(m.apply(i)) == v.apply(i)
                            })
                        })
                        .collect();
                    assert_eq!(mediating.len(), 1, "cone must factor uniquely");
                }
            }
        }
        let _ = lat;
    }

    #[test]
    fn size_guard_trips() {
        // 12 fiber points with 3-point preimages: 3^12 > 100000.
        let g = Arc::new(FiniteGroup::trivial());
        let x = GSet::new(g.clone(), 12, (0..12).collect()).unwrap();
        let pt = GSet::point(g.clone());
        let mut triple = Vec::new();
        for i in 0..36 {
            triple.push(i / 3);
        }
        let a = GSet::new(g.clone(), 36, (0..36).collect()).unwrap();
        let gm = GMap::new(a, x.clone(), triple).unwrap();
        let f = GMap::terminal(&x, &pt).unwrap();
        assert!(matches!(
            dependent_product(&gm, &f, DEFAULT_SIZE_GUARD),
            Err(Error::CapExceeded(_))
        ));
    }
}
