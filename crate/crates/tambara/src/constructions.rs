//! The standard Tambara functors: Burnside, fixed-point, constant,
//! coinduction, Fun(G,R), and restriction to subgroups.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::functor::{
    BurnsideData, BurnsideLevel, TambaraData, TambaraFunctor, TambaraHom,
};
use crate::groups::{mask_elements, FiniteGroup, Mask, SubgroupLattice};
use crate::gsets::GSet;
use crate::rings::burnside::{decompose_to_vector, mult_induction_oracle};
use crate::rings::{Elt, GAction, GRing, Ring};

fn lattice_of(group: &Arc<FiniteGroup>) -> Arc<SubgroupLattice> {
    Arc::new(SubgroupLattice::new(group.clone()))
}

/// The fixed-point Tambara functor of a G-ring: level H is R^H, transfers
/// are coset sums, norms coset products, conjugation the action.
pub fn fixed_point(gring: GRing) -> Result<TambaraFunctor> {
    match gring.action {
        // Table actions are validated exhaustively; the structural actions
        // are automorphic by construction.
        GAction::Tables(_) => gring.validate()?,
        GAction::RightTranslation => {
            let ok = matches!(&gring.ring, Ring::Function { size, .. } if *size == gring.group.order());
            if !ok {
                return Err(Error::Structure(
                    "right-translation action needs Fun(G, R) with index size |G|".into(),
                ));
            }
        }
        GAction::Trivial => {}
    }
    let group = gring.group.clone();
    let lat = lattice_of(&group);
    let mut levels = Vec::with_capacity(lat.num_classes());
    for c in 0..lat.num_classes() {
        let fixed = gring.fixed_elements(lat.rep(c))?;
        levels.push(Ring::subring(gring.ring.clone(), fixed));
    }
    let desc = format!("fixed_point({})", gring.ring.describe());
    TambaraFunctor::new(group, lat, levels, TambaraData::FixedPoint(gring), desc)
}

/// The constant Tambara functor: fixed points of the trivial action, so
/// every level is R, tr_H^K = multiplication by [K:H], nm_H^K = the
/// [K:H]-th power.
pub fn constant(group: Arc<FiniteGroup>, ring: Ring) -> Result<TambaraFunctor> {
    if !ring.is_enumerable() {
        return Err(Error::NotEnumerable("constant functor coefficients".into()));
    }
    let desc = format!("constant({})", ring.describe());
    let mut t = fixed_point(GRing::trivial_action(group, ring))?;
    t.set_desc(desc);
    Ok(t)
}

/// Fun(G, R) with the right-translation action (g·φ)(h) = φ(hg).
pub fn fun_g_ring(group: Arc<FiniteGroup>, base: Ring) -> Result<GRing> {
    if !base.is_enumerable() {
        return Err(Error::NotEnumerable("function ring base".into()));
    }
    Ok(GRing::function_ring(group, base))
}

/// Coinduction from the trivial subgroup: the fixed-point functor of
/// Fun(G, R). Its top level is the diagonal copy of R.
pub fn coinduce(group: Arc<FiniteGroup>, ring: Ring) -> Result<TambaraFunctor> {
    let desc = format!("coinduce({})", ring.describe());
    let mut t = fixed_point(fun_g_ring(group, ring)?)?;
    t.set_desc(desc);
    Ok(t)
}

/// The Burnside Tambara functor: level H is the Burnside ring A(H);
/// restriction restricts H-sets, transfer induces, norm is multiplicative
/// induction. The ghost-coordinate norm formula is verified against the
/// Map_H(K, −) oracle on every transitive basis element of every stored
/// pair before virtual norms are enabled.
pub fn burnside_tambara(group: Arc<FiniteGroup>) -> Result<TambaraFunctor> {
    let lat = lattice_of(&group);
    let mut blevels = Vec::with_capacity(lat.num_classes());
    for c in 0..lat.num_classes() {
        blevels.push(BurnsideLevel::new(&group, lat.rep(c))?);
    }
    let levels: Vec<Ring> = blevels
        .iter()
        .map(|l| Ring::Burnside(l.ring.clone()))
        .collect();
    let desc = format!("burnside(|G|={})", group.order());
    let mut t = TambaraFunctor::new(
        group.clone(),
        lat.clone(),
        levels,
        TambaraData::Burnside(BurnsideData {
            levels: blevels,
            virtual_norms: false,
        }),
        desc,
    )?;
    let validated = validate_burnside_norms(&t)?;
    if let TambaraData::Burnside(bd) = t.data_mut() {
        bd.virtual_norms = validated;
    }
    Ok(t)
}

/// Compare the ghost-formula norm with the multiplicative-induction oracle
/// on all transitive basis elements of all stored pairs.
pub fn validate_burnside_norms(t: &TambaraFunctor) -> Result<bool> {
    let TambaraData::Burnside(bd) = t.data() else {
        return Err(Error::Precondition("not a Burnside functor".into()));
    };
    let group = t.group();
    let lat = t.lattice();
    for k in 0..lat.num_classes() {
        let rep_k = lat.rep(k);
        let dst_level = &bd.levels[k];
        for &s in lat.subgroups() {
            if s & rep_k != s {
                continue;
            }
            let cls_s = lat.class_of_mask(s)?;
            let src_level = &bd.levels[cls_s];
            let w = lat.conjugator_to_rep(s)?;
            let winv = group.inv(w);
            let (s_grp, s_embed) = group.subgroup_group(s)?;
            let s_grp = Arc::new(s_grp);
            for v in 0..src_level.lat.num_classes() {
                // Stored basis [rep/V]; the actual s-set is s/(w⁻¹Vw).
                let v_amb = src_level.to_ambient_mask(src_level.lat.rep(v));
                let u_amb = group.conj_mask(winv, v_amb);
                let u_std = mask_elements(u_amb)
                    .map(|a| s_embed.iter().position(|&e| e == a).expect("element of s"))
                    .fold(0u32, |m, i| m | (1 << i));
                let x = GSet::orbit(s_grp.clone(), u_std)?;
                let oracle_set = mult_induction_oracle(
                    group,
                    s,
                    &s_embed,
                    rep_k,
                    &dst_level.grp,
                    &dst_level.embed,
                    &x,
                )?;
                let oracle = decompose_to_vector(&oracle_set, &dst_level.lat)?;
                let formula = t.nm_prim(s, k, &src_level.ring.basis(v))?;
                if formula != Elt::IntVec(oracle) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Restrict a functor over G to a subgroup, producing a functor over the
/// standalone group of that subgroup. Levels are inherited: the level at an
/// H-class is the level of its G-class.
pub fn restrict(base: &Arc<TambaraFunctor>, h_mask: Mask) -> Result<TambaraFunctor> {
    let group = base.group();
    if !group.is_subgroup(h_mask) {
        return Err(Error::NotASubgroup("restriction subgroup".into()));
    }
    let (h_grp, embed) = group.subgroup_group(h_mask)?;
    let h_grp = Arc::new(h_grp);
    let lat_h = Arc::new(SubgroupLattice::new(h_grp.clone()));
    let mut levels = Vec::with_capacity(lat_h.num_classes());
    for c in 0..lat_h.num_classes() {
        let v_amb = mask_elements(lat_h.rep(c)).fold(0u32, |m, i| m | (1 << embed[i]));
        let g_cls = base.lattice().class_of_mask(v_amb)?;
        levels.push(base.level(g_cls).clone());
    }
    let desc = format!("restrict({}, |H|={})", base.describe(), h_grp.order());
    TambaraFunctor::new(
        h_grp,
        lat_h,
        levels,
        TambaraData::Restricted {
            base: base.clone(),
            embed,
        },
        desc,
    )
}

/// The comparison morphism k → underline(k(G/e)) given levelwise by the
/// restrictions to the bottom level, together with its target.
pub fn comparison_to_fixed_point(
    t: &TambaraFunctor,
) -> Result<(TambaraFunctor, TambaraHom)> {
    if !t.is_enumerable() {
        return Err(Error::NotEnumerable("comparison map".into()));
    }
    let group = t.group().clone();
    let e = t.bottom();
    let base_ring = t.level(e).clone();
    // The Weyl action at the bottom level as an explicit G-ring.
    let elems = base_ring.enumerate()?;
    let mut tables = Vec::with_capacity(group.order());
    for g in group.elements() {
        let perm: Vec<u64> = elems
            .iter()
            .map(|x| base_ring.index_of(&t.weyl_act(e, g, x)).expect("level element"))
            .collect();
        tables.push(perm);
    }
    let gring = GRing::from_tables(group.clone(), base_ring, tables)?;
    let target = fixed_point(gring)?;
    let e_mask = group.id_mask();
    let mut levels = Vec::with_capacity(t.num_classes());
    for c in 0..t.num_classes() {
        let map = t
            .level(c)
            .enumerate()?
            .into_iter()
            .map(|x| {
                let (_, img) = t.arrow_res(e_mask, (t.lattice().rep(c), x.clone()));
                (x, img)
            })
            .collect();
        levels.push(map);
    }
    Ok((target, TambaraHom { levels }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bispans::Bispan;
    use crate::functor::{check_axioms, check_hom, CheckMode, FValue};
    use crate::gsets::GMap;
    use crate::rings::GaloisField;
    use alloc::vec;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn constant_f3_levels() {
        let t = constant(c2(), Ring::gf(3, 1).unwrap()).unwrap();
        assert_eq!(t.level(0).size(), Some(3));
        assert_eq!(t.level(1).size(), Some(3));
    }

    #[test]
    fn fixed_point_f4_frobenius_levels() {
        let gr = GRing::frobenius(c2(), GaloisField::new(2, 2).unwrap()).unwrap();
        let t = fixed_point(gr).unwrap();
        // Levels (F4, F2).
        assert_eq!(t.level(0).size(), Some(4));
        assert_eq!(t.level(1).size(), Some(2));
        // nm_e^{C2}(a) = a·σ(a) = a³ = 1 for a ≠ 0 (the field norm of F4/F2).
        let lat = t.lattice().clone();
        let e = t.group().id_mask();
        for a in t.level(0).enumerate().unwrap() {
            if t.level(0).is_zero(&a) {
                continue;
            }
            let nm = t.nm_prim(e, lat.top(), &a).unwrap();
            assert_eq!(nm, t.level(1).one());
        }
    }

    #[test]
    fn coinduce_f3_structure() {
        let t = coinduce(c2(), Ring::gf(3, 1).unwrap()).unwrap();
        // Levels (Fun(C2,F3), diagonal F3).
        assert_eq!(t.level(0).size(), Some(9));
        assert_eq!(t.level(1).size(), Some(3));
        // tr_e^{C2}(φ) = φ + σφ.
        let e = t.group().id_mask();
        let top = t.lattice().top();
        for x in t.level(0).enumerate().unwrap() {
            let tr = t.tr_prim(e, top, &x);
            let sx = t.weyl_act(0, 1, &x);
            let expect = t.level(0).add(&x, &sx);
            assert_eq!(tr, expect);
        }
    }

    #[test]
    fn coinduce_is_fixed_point_of_translation() {
        // C_e^G R = fixed points of Fun(G,R): sizes and transfer agree with
        // building the function G-ring directly.
        let g = c2();
        let via_coinduce = coinduce(g.clone(), Ring::gf(2, 1).unwrap()).unwrap();
        let via_fun = fixed_point(fun_g_ring(g, Ring::gf(2, 1).unwrap()).unwrap()).unwrap();
        for c in 0..via_coinduce.num_classes() {
            assert_eq!(via_coinduce.level(c).size(), via_fun.level(c).size());
        }
    }

    #[test]
    fn constant_formulas() {
        // underline(F3) for C2: tr_e^{C2}(x) = 2x, nm(x) = x².
        let t = constant(c2(), Ring::gf(3, 1).unwrap()).unwrap();
        let e = t.group().id_mask();
        let top = t.lattice().top();
        let r = t.level(0).clone();
        for x in r.enumerate().unwrap() {
            assert_eq!(t.tr_prim(e, top, &x), r.add(&x, &x));
            assert_eq!(t.nm_prim(e, top, &x).unwrap(), r.mul(&x, &x));
        }
        // nm(2) = 4 = 1 in F3.
        let two = r.from_int(2);
        assert_eq!(t.nm_prim(e, top, &two).unwrap(), r.one());
        // underline(ℤ/4): tr(1) = 2.
        let t4 = constant(c2(), Ring::Modular(4)).unwrap();
        assert_eq!(
            t4.tr_prim(e, top, &Elt::Int(1)),
            Elt::Int(2)
        );
    }

    #[test]
    fn burnside_c2_shape() {
        let t = burnside_tambara(c2()).unwrap();
        let Ring::Burnside(a_e) = t.level(0) else {
            panic!()
        };
        let Ring::Burnside(a_c2) = t.level(1) else {
            panic!()
        };
        assert_eq!(a_e.num_classes(), 1);
        assert_eq!(a_c2.num_classes(), 2);
        // tr_e^{C2}(1) = [C2/e] has marks (2, 0).
        let e = t.group().id_mask();
        let one = a_e.one();
        let Elt::IntVec(v) = t.tr_prim(e, 1, &one) else {
            panic!()
        };
        assert_eq!(a_c2.marks_of(&v), vec![2, 0]);
    }

    #[test]
    fn burnside_ghost_norms_validated() {
        for g in [
            Arc::new(FiniteGroup::cyclic(2)),
            Arc::new(FiniteGroup::cyclic(3)),
            Arc::new(FiniteGroup::cyclic(4)),
            Arc::new(FiniteGroup::symmetric(3).unwrap()),
        ] {
            let t = burnside_tambara(g).unwrap();
            let TambaraData::Burnside(bd) = t.data() else {
                panic!()
            };
            assert!(bd.virtual_norms, "ghost formula failed oracle validation");
        }
    }

    #[test]
    fn burnside_ghost_norms_validated_to_order_twelve() {
        // Exhaustive oracle agreement on every transitive basis element for
        // groups up to order 12.
        let d4 = FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]).unwrap();
        assert_eq!(d4.order(), 8);
        let a4 =
            FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap();
        assert_eq!(a4.order(), 12);
        for g in [
            FiniteGroup::cyclic(6),
            FiniteGroup::klein_four(),
            d4,
            a4,
        ] {
            let t = burnside_tambara(Arc::new(g)).unwrap();
            let TambaraData::Burnside(bd) = t.data() else {
                panic!()
            };
            assert!(bd.virtual_norms);
        }
    }

    #[test]
    fn virtual_burnside_norm_agrees_with_distributor_route() {
        // nm along C2 ≤ S3 of the virtual element ξ = res([S3/C2] − [S3/S3]),
        // resolved through an effective shift: the composed bispan
        // N ∘ T(fold) evaluates nm(ξ + b) through the dependent-product
        // distributor, which must agree with the ghost-formula norm of the
        // directly computed sum.
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let t = burnside_tambara(s3.clone()).unwrap();
        let lat = t.lattice().clone();
        let c2_mask = lat.classes()[1].rep;
        let full = s3.full_mask();
        // ξ at the C2 level (stored coordinates).
        let Ring::Burnside(top) = t.level(lat.top()) else {
            panic!()
        };
        // [S3/C2] − [S3/S3] restricts to the effective [C2/e]; doubling the
        // subtracted point yields a genuinely virtual restriction.
        let Elt::IntVec(virt) = top.add(&[0, 1, 0, 0], &[0, 0, 0, -2]) else {
            panic!()
        };
        let (_, xi) = t.arrow_res(c2_mask, (full, Elt::IntVec(virt)));
        let Ring::Burnside(mid) = t.level(1) else {
            panic!()
        };
        let Elt::IntVec(xi_v) = &xi else { panic!() };
        assert!(!mid.is_effective(xi_v), "shift test needs a virtual element");
        // Effective shift b = [C2/C2] + [C2/e] at the same level.
        let b = Elt::IntVec(alloc::vec![1, 2]);
        let sum = {
            let Elt::IntVec(bv) = &b else { panic!() };
            mid.add(xi_v, bv)
        };
        let direct = t.arrow_nm(full, (c2_mask, sum)).unwrap().1;
        // Distributor route: evaluate N_π ∘ T_fold at (ξ, b).
        let orbit = GSet::orbit(s3.clone(), c2_mask).unwrap();
        let pt = GSet::point(s3.clone());
        let pi = GMap::terminal(&orbit, &pt).unwrap();
        let (dbl, i1, i2) = orbit.disjoint_union(&orbit).unwrap();
        let mut fold = alloc::vec![0usize; dbl.len()];
        for x in 0..orbit.len() {
            fold[i1[x]] = x;
            fold[i2[x]] = x;
        }
        let fold = GMap::new(dbl, orbit.clone(), fold).unwrap();
        let composed = Bispan::norm(&pi).compose(&Bispan::transfer(&fold)).unwrap();
        let v = FValue {
            comps: alloc::vec![(1, xi.clone()), (1, b.clone())],
        };
        let via_bispan = t.eval_bispan(&composed, &v).unwrap();
        assert_eq!(via_bispan.comps[0].1, direct);
    }

    #[test]
    fn burnside_trivial_group() {
        let t = burnside_tambara(Arc::new(FiniteGroup::trivial())).unwrap();
        let Ring::Burnside(a) = t.level(0) else {
            panic!()
        };
        assert_eq!(a.num_classes(), 1);
        // A(e) ≅ ℤ with basis the one-point set.
        assert_eq!(a.one(), Elt::IntVec(vec![1]));
    }

    #[test]
    fn restriction_levels() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let t = Arc::new(burnside_tambara(s3.clone()).unwrap());
        let lat = t.lattice().clone();
        // H = G gives the same level ranks.
        let full = restrict(&t, s3.full_mask()).unwrap();
        assert_eq!(full.num_classes(), t.num_classes());
        // H = e: a single level, A(e).
        let bottom = restrict(&t, s3.id_mask()).unwrap();
        assert_eq!(bottom.num_classes(), 1);
        // H = C2: ranks match burnside_tambara(C2): A(e) rank 1, A(C2) rank 2.
        let c2_mask = lat.classes()[1].rep;
        let r = restrict(&t, c2_mask).unwrap();
        assert_eq!(r.num_classes(), 2);
        let Ring::Burnside(a0) = r.level(0) else {
            panic!()
        };
        let Ring::Burnside(a1) = r.level(1) else {
            panic!()
        };
        assert_eq!((a0.num_classes(), a1.num_classes()), (1, 2));
    }

    #[test]
    fn restricted_functor_is_coherent() {
        // Restriction of a fixed-point functor passes the axiom checker.
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let t = Arc::new(coinduce(s3.clone(), Ring::gf(2, 1).unwrap()).unwrap());
        let c2_mask = t.lattice().classes()[1].rep;
        let r = restrict(&t, c2_mask).unwrap();
        let report = check_axioms(&r, 5, 40).unwrap();
        assert!(report.ok(), "violations: {:?}", report.violations);
    }

    #[test]
    fn res_tr_is_trace_on_fixed_point() {
        // On the fixed-point functor of Fun(C2, F3): res∘tr(x) = x + σx,
        // evaluated through bispans.
        let g = c2();
        let t = coinduce(g.clone(), Ring::gf(3, 1).unwrap()).unwrap();
        let free = GSet::orbit(g.clone(), g.id_mask()).unwrap();
        let pt = GSet::point(g.clone());
        let pi = GMap::terminal(&free, &pt).unwrap();
        let b = Bispan::restriction(&pi)
            .compose(&Bispan::transfer(&pi))
            .unwrap();
        for x in t.level(0).enumerate().unwrap() {
            let v = FValue {
                comps: vec![(0, x.clone())],
            };
            let out = t.eval_bispan(&b, &v).unwrap();
            let expect = t.level(0).add(&x, &t.weyl_act(0, 1, &x));
            assert_eq!(out.comps[0].1, expect);
        }
    }

    #[test]
    fn norm_generator_on_constant() {
        // b = n_of(C2/e→C2/C2) on constant F3: nm(a) = a², nm(2) = 1.
        let g = c2();
        let t = constant(g.clone(), Ring::gf(3, 1).unwrap()).unwrap();
        let free = GSet::orbit(g.clone(), g.id_mask()).unwrap();
        let pt = GSet::point(g.clone());
        let pi = GMap::terminal(&free, &pt).unwrap();
        let b = Bispan::norm(&pi);
        let r = t.level(0).clone();
        for x in r.enumerate().unwrap() {
            let v = FValue {
                comps: vec![(0, x.clone())],
            };
            let out = t.eval_bispan(&b, &v).unwrap();
            assert_eq!(out.comps[0].1, r.mul(&x, &x));
        }
    }

    #[test]
    fn c2_norm_addition_distributes_through_bispans() {
        // compose(n_of(C2/e→C2/C2), t_of(fold)) evaluated on the fixed-point
        // functor of Fun(C2,F3) encodes nm(a+b) = nm(a) + nm(b) + tr(a·σb).
        let g = c2();
        let t = coinduce(g.clone(), Ring::gf(3, 1).unwrap()).unwrap();
        let free = GSet::orbit(g.clone(), g.id_mask()).unwrap();
        let pt = GSet::point(g.clone());
        let pi = GMap::terminal(&free, &pt).unwrap();
        let (dbl, i1, i2) = free.disjoint_union(&free).unwrap();
        let mut fold = vec![0usize; dbl.len()];
        for x in 0..free.len() {
            fold[i1[x]] = x;
            fold[i2[x]] = x;
        }
        let fold = GMap::new(dbl, free.clone(), fold).unwrap();
        let composed = Bispan::norm(&pi).compose(&Bispan::transfer(&fold)).unwrap();
        let ring = t.level(0).clone();
        let top_ring = t.level(1).clone();
        let e = g.id_mask();
        for a in ring.enumerate().unwrap() {
            for b in ring.enumerate().unwrap() {
                let v = FValue {
                    comps: vec![(0, a.clone()), (0, b.clone())],
                };
                let via_bispan = t.eval_bispan(&composed, &v).unwrap().comps[0].1.clone();
                let direct = t.nm_prim(e, 1, &ring.add(&a, &b)).unwrap();
                assert_eq!(via_bispan, direct);
                // Expansion: nm(a) + nm(b) + tr(a·σ(b)).
                let expansion = top_ring.add(
                    &top_ring.add(
                        &t.nm_prim(e, 1, &a).unwrap(),
                        &t.nm_prim(e, 1, &b).unwrap(),
                    ),
                    &t.tr_prim(e, 1, &ring.mul(&a, &t.weyl_act(0, 1, &b))),
                );
                assert_eq!(via_bispan, expansion);
            }
        }
    }

    #[test]
    fn axiom_checker_on_constructions() {
        let g = c2();
        for t in [
            constant(g.clone(), Ring::Modular(4)).unwrap(),
            coinduce(g.clone(), Ring::gf(2, 1).unwrap()).unwrap(),
            burnside_tambara(g.clone()).unwrap(),
        ] {
            let report = check_axioms(&t, 42, 60).unwrap();
            assert!(
                report.ok(),
                "{}: violations {:?}",
                t.describe(),
                report.violations
            );
        }
    }

    #[test]
    fn corrupted_transfer_is_detected() {
        // Tabulate constant(F3) and break one transfer entry: the checker
        // must report a violation in a transfer-involving family.
        let g = c2();
        let t = constant(g.clone(), Ring::gf(3, 1).unwrap()).unwrap();
        let mut tab = crate::functor::tabulate(&t).unwrap();
        let key = (g.id_mask(), 1);
        let table = tab.tr.get_mut(&key).unwrap();
        // Swap the transfer images of 0 and 1: now tr(0) = 1.
        table.swap(0, 1);
        let bad = TambaraFunctor::new(
            t.group().clone(),
            t.lattice().clone(),
            (0..t.num_classes()).map(|c| t.level(c).clone()).collect(),
            TambaraData::Tabulated(alloc::boxed::Box::new(tab)),
            "corrupted".into(),
        )
        .unwrap();
        let report = check_axioms(&bad, 3, 120).unwrap();
        assert!(!report.ok());
    }

    #[test]
    fn trivial_group_reduces_to_ring() {
        let t = constant(Arc::new(FiniteGroup::trivial()), Ring::Modular(4)).unwrap();
        let report = check_axioms(&t, 9, 40).unwrap();
        assert!(report.ok());
    }

    #[test]
    fn comparison_map_is_valid_hom() {
        let g = c2();
        for t in [
            coinduce(g.clone(), Ring::gf(2, 1).unwrap()).unwrap(),
            constant(g.clone(), Ring::gf(3, 1).unwrap()).unwrap(),
        ] {
            let (target, hom) = comparison_to_fixed_point(&t).unwrap();
            check_hom(&t, &target, &hom, CheckMode::Exhaustive).unwrap();
        }
    }
}
