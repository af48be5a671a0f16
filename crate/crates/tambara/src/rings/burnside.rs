//! Burnside rings with table-of-marks arithmetic.
//!
//! `BurnsideRing` is the Grothendieck ring of finite H-sets for a standalone
//! finite group H; elements are integer coefficient vectors over the
//! subgroup classes of H (basis [H/K]). The table of marks gives the
//! injective ghost map into a product of copies of ℤ, and the norm maps of
//! the Burnside Tambara functor are computed in ghost coordinates and pulled
//! back through the triangular marks matrix with an exact integrality check.
//!
//! The ghost formula for norms is not taken on faith: the independent
//! oracle is multiplicative induction Map_H(K, −), materialized as an
//! honest K-set of equivariant maps, and functor construction verifies the
//! formula against the oracle on every transitive basis element before
//! virtual norms are enabled.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::groups::{mask_contains, mask_elements, FiniteGroup, Mask, SubgroupLattice};
use crate::gsets::GSet;
use crate::rings::Elt;

/// The Burnside ring A(H) of a standalone finite group.
#[derive(Debug)]
pub struct BurnsideRing {
    lat: Arc<SubgroupLattice>,
    /// marks[i][j] = |(H/K_i)^{K_j}|; zero unless class j is subconjugate to i.
    marks: Vec<Vec<i64>>,
    /// mul_table[i][j] = coefficients of [H/K_i]·[H/K_j].
    mul_table: Vec<Vec<Vec<i64>>>,
}

impl PartialEq for BurnsideRing {
    fn eq(&self, other: &Self) -> bool {
        self.lat.group() == other.lat.group()
    }
}
impl Eq for BurnsideRing {}

impl BurnsideRing {
    pub fn new(lat: Arc<SubgroupLattice>) -> Result<Self> {
        let nc = lat.num_classes();
        let mut marks = vec![vec![0i64; nc]; nc];
        for (i, row) in marks.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = mark(lat.group(), lat.rep(i), lat.rep(j));
            }
        }
        // Products of basis orbits, decomposed exactly.
        let mut mul_table = vec![vec![Vec::new(); nc]; nc];
        for i in 0..nc {
            let xi = GSet::orbit(lat.group().clone(), lat.rep(i))?;
            for j in 0..=i {
                let xj = GSet::orbit(lat.group().clone(), lat.rep(j))?;
                let prod = product_gset(&xi, &xj)?;
                let coeffs = decompose_to_vector(&prod, &lat)?;
                mul_table[i][j] = coeffs.clone();
                mul_table[j][i] = coeffs;
            }
        }
        Ok(BurnsideRing {
            lat,
            marks,
            mul_table,
        })
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lat
    }

    pub fn num_classes(&self) -> usize {
        self.lat.num_classes()
    }

    pub fn group_name(&self) -> String {
        use alloc::format;
        format!("grp{}", self.lat.group().order())
    }

    pub fn zero(&self) -> Elt {
        Elt::IntVec(vec![0; self.num_classes()])
    }

    /// The class of the one-point set [H/H].
    pub fn one(&self) -> Elt {
        let mut v = vec![0; self.num_classes()];
        v[self.lat.top()] = 1;
        Elt::IntVec(v)
    }

    pub fn basis(&self, class: usize) -> Elt {
        let mut v = vec![0; self.num_classes()];
        v[class] = 1;
        Elt::IntVec(v)
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Elt {
        Elt::IntVec(a.iter().zip(b.iter()).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &[i64]) -> Elt {
        Elt::IntVec(a.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Elt {
        let nc = self.num_classes();
        let mut out = vec![0i64; nc];
        for i in 0..nc {
            if a[i] == 0 {
                continue;
            }
            for j in 0..nc {
                if b[j] == 0 {
                    continue;
                }
                for (k, c) in self.mul_table[i][j].iter().enumerate() {
                    out[k] += a[i] * b[j] * c;
                }
            }
        }
        Elt::IntVec(out)
    }

    /// The marks (ghost) vector of an element: fixed-point counts at every
    /// subgroup class.
    pub fn marks_of(&self, a: &[i64]) -> Vec<i64> {
        let nc = self.num_classes();
        (0..nc)
            .map(|j| (0..nc).map(|i| a[i] * self.marks[i][j]).sum())
            .collect()
    }

    /// Mark of an element at an arbitrary subgroup mask (marks are constant
    /// on conjugacy classes).
    pub fn mark_at(&self, a: &[i64], sub: Mask) -> Result<i64> {
        let j = self.lat.class_of_mask(sub)?;
        Ok((0..self.num_classes())
            .map(|i| a[i] * self.marks[i][j])
            .sum())
    }

    pub fn marks_matrix(&self) -> &Vec<Vec<i64>> {
        &self.marks
    }

    /// Invert the ghost map: recover coefficients from a marks vector by
    /// triangular descent, with an exact integrality check at each step.
    pub fn from_marks(&self, v: &[i64]) -> Result<Elt> {
        let nc = self.num_classes();
        if v.len() != nc {
            return Err(Error::Mismatch("marks vector has wrong length".into()));
        }
        let mut c = vec![0i64; nc];
        for j in (0..nc).rev() {
            let mut rhs = v[j];
            for i in (j + 1)..nc {
                rhs -= c[i] * self.marks[i][j];
            }
            let d = self.marks[j][j];
            if rhs % d != 0 {
                return Err(Error::Inconsistency(
                    "marks solve produced a non-integral coefficient".into(),
                ));
            }
            c[j] = rhs / d;
        }
        Ok(Elt::IntVec(c))
    }

    /// Effective elements have non-negative coefficients (classes of honest
    /// H-sets).
    pub fn is_effective(&self, a: &[i64]) -> bool {
        a.iter().all(|&c| c >= 0)
    }
}

/// |(G/K)^L|: cosets gK with L·gK = gK.
pub fn mark(group: &Arc<FiniteGroup>, k: Mask, l: Mask) -> i64 {
    let reps = group.left_transversal(k);
    reps.iter()
        .filter(|&&r| {
            mask_elements(l).all(|x| {
                // x·rK = rK ⟺ r⁻¹xr ∈ K
                mask_contains(k, group.conj(group.inv(r), x))
            })
        })
        .count() as i64
}

/// Cartesian product with diagonal action.
pub fn product_gset(x: &GSet, y: &GSet) -> Result<GSet> {
    use crate::gsets::{pullback, GMap};
    let pt = GSet::point(x.group().clone());
    let fx = GMap::terminal(x, &pt)?;
    let fy = GMap::terminal(y, &pt)?;
    let (p, _, _) = pullback(&fx, &fy)?;
    Ok(p)
}

/// Coefficient vector of a G-set in the Burnside basis of its group.
pub fn decompose_to_vector(x: &GSet, lat: &SubgroupLattice) -> Result<Vec<i64>> {
    let mut v = vec![0i64; lat.num_classes()];
    for o in x.orbit_decompose(lat)? {
        v[o.class] += 1;
    }
    Ok(v)
}

/// Multiplicative induction oracle: the K-set Map_H(K, X) of H-equivariant
/// maps K → X, with K acting by right translation of the argument.
///
/// `h_embed` identifies the standalone group of X with the ambient subgroup
/// H ⊆ K; `k_grp`/`k_embed` do the same for the target standalone K.
pub fn mult_induction_oracle(
    ambient: &Arc<FiniteGroup>,
    h_mask: Mask,
    h_embed: &[usize],
    k_mask: Mask,
    k_grp: &Arc<FiniteGroup>,
    k_embed: &[usize],
    x: &GSet,
) -> Result<GSet> {
    if h_mask & k_mask != h_mask {
        return Err(Error::Precondition("H must be contained in K".into()));
    }
    // Right coset representatives of H\K inside the ambient group.
    let mut reps: Vec<usize> = Vec::new();
    let mut covered = 0u32;
    for k in mask_elements(k_mask) {
        if !mask_contains(covered, k) {
            reps.push(k);
            for h in mask_elements(h_mask) {
                covered |= 1 << ambient.mul(h, k);
            }
        }
    }
    let t = reps.len();
    let xs = x.len().max(1);
    let total = (xs as u64).checked_pow(t as u32).unwrap_or(u64::MAX);
    if total > 100_000 {
        return Err(Error::CapExceeded(
            "multiplicative induction too large".into(),
        ));
    }
    let n = if x.is_empty() && t > 0 {
        0
    } else {
        total as usize
    };
    let h_pos = |amb: usize| -> usize {
        h_embed
            .iter()
            .position(|&e| e == amb)
            .expect("element of H")
    };
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut v = Vec::with_capacity(t);
        for _ in 0..t {
            v.push(idx % xs);
            idx /= xs;
        }
        v
    };
    let encode = |v: &[usize]| -> usize {
        let mut idx = 0;
        for &c in v.iter().rev() {
            idx = idx * xs + c;
        }
        idx
    };
    // For each (rep index i, k ∈ K): r_i·k = h·r_j.
    let mut act = vec![0usize; k_grp.order() * n];
    for khat in k_grp.elements() {
        let k_amb = k_embed[khat];
        let mut moves: Vec<(usize, usize)> = Vec::with_capacity(t); // (j, h standalone)
        for &ri in &reps {
            let rik = ambient.mul(ri, k_amb);
            let j = reps
                .iter()
                .position(|&rj| mask_contains(h_mask, ambient.mul(rik, ambient.inv(rj))))
                .expect("coset cover");
            let h_amb = ambient.mul(rik, ambient.inv(reps[j]));
            moves.push((j, h_pos(h_amb)));
        }
        for idx in 0..n {
            let tup = decode(idx);
            let moved: Vec<usize> = moves.iter().map(|&(j, h)| x.act(h, tup[j])).collect();
            act[khat * n + idx] = encode(&moved);
        }
    }
    GSet::new(k_grp.clone(), n, act)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring_of(g: FiniteGroup) -> BurnsideRing {
        let lat = Arc::new(SubgroupLattice::new(Arc::new(g)));
        BurnsideRing::new(lat).unwrap()
    }

    #[test]
    fn trivial_group_marks() {
        let r = ring_of(FiniteGroup::trivial());
        assert_eq!(*r.marks_matrix(), vec![vec![1]]);
    }

    #[test]
    fn c2_marks_matrix() {
        // Basis (C2/e, C2/C2), columns (e, C2): [[2,0],[1,1]].
        let r = ring_of(FiniteGroup::cyclic(2));
        assert_eq!(*r.marks_matrix(), vec![vec![2, 0], vec![1, 1]]);
    }

    #[test]
    fn marks_is_ring_hom() {
        // Multiplicativity against the product-of-sets oracle on S3.
        let r = ring_of(FiniteGroup::symmetric(3).unwrap());
        let a = vec![1, 2, 0, -1];
        let b = vec![0, 1, 3, 2];
        let Elt::IntVec(prod) = r.mul(&a, &b) else {
            unreachable!()
        };
        let ma = r.marks_of(&a);
        let mb = r.marks_of(&b);
        let mp = r.marks_of(&prod);
        for j in 0..r.num_classes() {
            assert_eq!(mp[j], ma[j] * mb[j]);
        }
        let Elt::IntVec(sum) = r.add(&a, &b) else {
            unreachable!()
        };
        let ms = r.marks_of(&sum);
        for j in 0..r.num_classes() {
            assert_eq!(ms[j], ma[j] + mb[j]);
        }
    }

    #[test]
    fn marks_roundtrip() {
        for g in [
            FiniteGroup::cyclic(4),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::klein_four(),
        ] {
            let r = ring_of(g);
            let nc = r.num_classes();
            for i in 0..nc {
                let Elt::IntVec(b) = r.basis(i) else {
                    unreachable!()
                };
                let m = r.marks_of(&b);
                assert_eq!(r.from_marks(&m).unwrap(), Elt::IntVec(b));
            }
        }
    }

    #[test]
    fn non_integral_marks_rejected() {
        let r = ring_of(FiniteGroup::cyclic(2));
        // (1, 0) needs c·(2,0) + d·(1,1) with d = 0, 2c = 1.
        assert!(r.from_marks(&[1, 0]).is_err());
    }

    #[test]
    fn unit_is_one_point_set() {
        let r = ring_of(FiniteGroup::symmetric(3).unwrap());
        let Elt::IntVec(one) = r.one() else {
            unreachable!()
        };
        let a = vec![2, -1, 3, 1];
        assert_eq!(r.mul(&one, &a), Elt::IntVec(a.clone()));
        assert!(r.marks_of(&one).iter().all(|&m| m == 1));
    }

    #[test]
    fn oracle_small_cases() {
        // K = H: Map_H(H, X) ≅ X.
        let amb = Arc::new(FiniteGroup::cyclic(2));
        let full = amb.full_mask();
        let (k_grp, k_embed) = amb.subgroup_group(full).unwrap();
        let k_grp = Arc::new(k_grp);
        let x = GSet::orbit(k_grp.clone(), k_grp.id_mask()).unwrap();
        let y = mult_induction_oracle(&amb, full, &k_embed, full, &k_grp, &k_embed, &x).unwrap();
        assert_eq!(y.len(), x.len());

        // H = e ≤ C2, X = 2 trivial points: Map_e(C2, X) = X² = 4 points
        // with the swap action: 2 fixed + 1 free orbit.
        let (e_grp, e_embed) = amb.subgroup_group(amb.id_mask()).unwrap();
        let e_grp = Arc::new(e_grp);
        let two = GSet::new(e_grp.clone(), 2, vec![0, 1]).unwrap();
        let y = mult_induction_oracle(&amb, amb.id_mask(), &e_embed, full, &k_grp, &k_embed, &two)
            .unwrap();
        assert_eq!(y.len(), 4);
        let sizes: Vec<usize> = y.orbits().iter().map(|o| o.len()).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 2);
        assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 1);

        // X = one point → one point.
        let one = GSet::point(e_grp.clone());
        let y = mult_induction_oracle(&amb, amb.id_mask(), &e_embed, full, &k_grp, &k_embed, &one)
            .unwrap();
        assert_eq!(y.len(), 1);
    }
}
