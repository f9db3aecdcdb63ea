//! Dihedral closed forms against the general machinery.

use hecke_cells::afun::{check_conjectures, AData, CheckScope};
use hecke_cells::coxeter::{CoxeterSystem, Extent, GroupTable};
use hecke_cells::dihedral::{self, elt};
use hecke_cells::hecke::{Basis, HeckeElt};
use hecke_cells::jring::JRing;
use hecke_cells::kl::KLTable;

fn finite(m: u32, l1: u32, l2: u32) -> KLTable {
    KLTable::build(GroupTable::full(&CoxeterSystem::dihedral(Some(m), l1, l2).unwrap()).unwrap())
}

fn ball(l1: u32, l2: u32, r: u32) -> AData {
    AData::build(GroupTable::enumerate(&CoxeterSystem::dihedral(None, l1, l2).unwrap(), Extent::Ball(r)).unwrap())
}

#[test]
fn equal_parameters_give_gamma() {
    for m in [3, 4, 6, 8] {
        for l in [1, 2] {
            let kl = finite(m, l, l);
            for w in kl.table().elements() {
                assert_eq!(kl.c_element(w), dihedral::gamma(kl.table(), w), "m={m} w={}", kl.table().word_string(w));
            }
        }
    }
}

#[test]
fn unequal_parameters_give_gamma_prime() {
    for (m, l1, l2) in [(4, 1, 2), (4, 1, 3), (6, 1, 2), (6, 2, 3), (8, 1, 2)] {
        let kl = finite(m, l1, l2);
        for w in kl.table().elements() {
            assert_eq!(kl.c_element(w), dihedral::gamma_prime(kl.table(), w), "m={m} w={}", kl.table().word_string(w));
        }
    }
    let ad = ball(1, 3, 10);
    for w in ad.table().elements() {
        assert_eq!(ad.kl().c_element(w), dihedral::gamma_prime(ad.table(), w));
    }
}

#[test]
fn square_of_the_second_longest() {
    for (m, l1, l2) in [(4, 1, 2), (4, 1, 3), (6, 1, 2), (6, 1, 3)] {
        let ad = AData::new(finite(m, l1, l2));
        let g = ad.table();
        let x = elt(g, 1, m as usize - 1).unwrap();
        let h = ad.h(x, x).unwrap();
        assert_eq!(h.coeff(x), &dihedral::square_coefficient(l1 as i32, l2 as i32, m as usize));
        assert!(h.support().all(|z| z == x || z == g.longest().unwrap()));
    }
}

#[test]
fn finite_a_values() {
    for (m, l1, l2) in [(4, 1, 2), (4, 1, 3), (4, 2, 3), (6, 1, 2), (6, 1, 3), (8, 1, 2)] {
        let ad = AData::new(finite(m, l1, l2));
        let g = ad.table();
        for z in g.elements() {
            assert_eq!(ad.a(z).unwrap(), dihedral::a_finite_unequal(g, z, m as usize), "m={m} z={}", g.word_string(z));
        }
        let x = elt(g, 1, m as usize - 1).unwrap();
        let (e, c) = ad.h(x, x).unwrap().coeff(x).leading().map(|(e, c)| (e, c.to_i64().unwrap())).unwrap();
        let k = (m as i32 - 2) / 2;
        assert_eq!((e, c), ((m as i32 * l2 as i32 - (m as i32 - 2) * l1 as i32) / 2, if k % 2 == 0 { 1 } else { -1 }));
    }
}

#[test]
fn infinite_products_delta_and_d() {
    for (l1, l2) in [(1, 2), (1, 3), (2, 3)] {
        let ad = ball(l1, l2, 12);
        let g = ad.table();
        let mut covered = 0;
        for x in g.elements() {
            for y in g.elements() {
                let (Some(h), Some(want)) = (ad.h_opt(x, y), dihedral::product_infinite(g, x, y)) else { continue };
                assert_eq!(h, &want, "x={} y={}", g.word_string(x), g.word_string(y));
                covered += 1;
            }
        }
        assert!(covered > 100);
        for z in g.elements() {
            assert_eq!(ad.delta(z), dihedral::delta_infinite(g, z));
        }
        let d = dihedral::d_s1(g);
        let s1 = g.gen(0);
        let q = HeckeElt::from_coords(Basis::T, g.elements().map(|y| (y, ad.kl().q_prime(s1, y).clone())));
        assert_eq!(q, d);
    }
}

#[test]
fn finite_d_s1() {
    for (m, l1, l2) in [(4, 1, 2), (6, 1, 2), (6, 2, 5)] {
        let kl = finite(m, l1, l2);
        let g = kl.table();
        let q = HeckeElt::from_coords(Basis::T, g.elements().map(|y| (y, kl.q_prime(g.gen(0), y).clone())));
        assert_eq!(q, dihedral::d_s1(g));
    }
}

#[test]
fn infinite_j_table() {
    let ad = ball(1, 2, 12);
    let rep = check_conjectures(&ad, &CheckScope::default()).unwrap();
    let j = JRing::new(&ad, &rep).unwrap();
    let g = ad.table();
    for x in g.elements() {
        for y in g.elements() {
            let (Ok(got), Some(want)) = (j.t_mul(x, y), dihedral::j_product_infinite(g, x, y)) else { continue };
            let mut want = want;
            want.sort_unstable();
            let got: Vec<(usize, i64)> = got.coords.into_iter().collect();
            assert_eq!(got, want, "x={} y={}", g.word_string(x), g.word_string(y));
        }
    }
}
