//! Exhaustive checks over the fixtures for the structural invariants that tie
//! the modules together.

use eicat::catalg::{build_algebra, column_projective, is_isomorphic, regular_module, Algebra, Module, ModuleHom};
use eicat::catgen::{fixture, FixtureName};
use eicat::exactla::Field;
use eicat::fincat::{hom_action_report, is_ei, smallest_object};
use eicat::freeness::{is_free, is_unfactorizable, verify_composition_laws};
use eicat::gmodules::{
    build_e, build_filtration, build_k, build_ses, build_trivial, find_section, smallest_object_section,
};
use eicat::homalg::{gorenstein_report, is_gorenstein_projective, is_projective, projective_dimension, projective_over_k, ExtRange};

const FIELDS: [Field; 3] = [Field::Rationals, Field::Prime(2), Field::Prime(3)];

fn free_fixtures() -> impl Iterator<Item = FixtureName> {
    FixtureName::ALL.into_iter().filter(|&f| is_free(&fixture(f)).unwrap().is_free)
}

#[test]
fn composition_endpoints_and_groups() {
    for f in FixtureName::ALL {
        let cat = fixture(f);
        assert!(is_ei(&cat));
        for g in cat.morphisms() {
            for h in cat.morphisms() {
                if let Some(c) = cat.compose(g, h) {
                    assert_eq!((cat.source(c), cat.target(c)), (cat.source(h), cat.target(g)));
                }
            }
        }
        for x in cat.objects() {
            for &g in cat.endomorphisms(x) {
                let inv = cat.inverse(g).expect("EI: endomorphisms invert");
                assert_eq!(cat.comp(g, inv), cat.identity(x));
                assert_eq!(cat.comp(inv, g), cat.identity(x));
            }
        }
    }
}

#[test]
fn unfactorizability_is_invariant_under_automorphisms() {
    for f in FixtureName::ALL {
        let cat = fixture(f);
        for a in cat.morphisms().filter(|&a| is_unfactorizable(&cat, a)) {
            for &h in cat.endomorphisms(cat.target(a)) {
                for &g in cat.endomorphisms(cat.source(a)) {
                    assert!(is_unfactorizable(&cat, cat.comp(h, cat.comp(a, g))), "{f}");
                }
            }
        }
    }
}

#[test]
fn t_identities_on_free_fixtures() {
    for f in free_fixtures() {
        for field in FIELDS {
            let report = verify_composition_laws(&fixture(f), field).unwrap();
            assert!(report.passed(), "{f} {field}: {:?}", report.failures);
            assert!(report.pairs_checked > 0 || fixture(f).num_objects() == 1);
        }
    }
}

#[test]
fn e_is_a_functor_exhaustively() {
    for f in free_fixtures() {
        for field in FIELDS {
            let alg = build_algebra(&fixture(f), field);
            let e = build_e(&alg).unwrap().module;
            let cat = alg.category();
            for b in cat.morphisms() {
                for a in cat.morphisms() {
                    if let Some(ba) = cat.compose(b, a) {
                        assert_eq!(e.map(ba), &e.map(b).mul(e.map(a)), "{f} {field}");
                    }
                }
            }
        }
    }
}

#[test]
fn k_is_a_submodule_with_trivial_quotient() {
    for f in free_fixtures() {
        for field in FIELDS {
            let alg = build_algebra(&fixture(f), field);
            let ses = build_ses(&alg).unwrap();
            ses.inclusion.check_naturality().unwrap();
            assert!(ses.inclusion.is_injective());
            let (image, _) = ses.inclusion.image();
            let bases: Vec<Vec<_>> = alg
                .category()
                .objects()
                .map(|x| ses.inclusion.component(x).columns())
                .collect();
            let q = ses.e.module.quotient(&bases).unwrap();
            assert_eq!(image.total_dim(), ses.k.total_dim());
            assert!(is_isomorphic(&q.module, &build_trivial(&alg), 5).is_isomorphic(), "{f} {field}");
        }
    }
}

fn one_orbit_splitting_hypothesis(alg: &Algebra) -> bool {
    let cat = alg.category();
    smallest_object(cat).is_some_and(|z| cat.objects().all(|x| hom_action_report(cat, z, x).orbit_count == 1))
}

#[test]
fn section_exists_iff_smallest_object_with_one_orbit() {
    for f in free_fixtures() {
        for field in FIELDS {
            let alg = build_algebra(&fixture(f), field);
            let ses = build_ses(&alg).unwrap();
            let solved = find_section(&ses.projection).unwrap();
            assert_eq!(solved.exists(), one_orbit_splitting_hypothesis(&alg), "{f} {field}");
            if let Ok(s) = smallest_object_section(&alg, &ses, None) {
                assert!(s.splits);
                // the explicit section solves the same linear system
                let diff = s.section.add(&solved.map.clone().unwrap().scale(&field.from_i64(-1)));
                assert!(ses.projection.compose(&diff).is_zero());
                assert_eq!(ses.projection.compose(&s.section), ModuleHom::identity(&ses.trivial));
            }
        }
    }
}

#[test]
fn e_on_one_object_is_trivial() {
    for field in FIELDS {
        let alg = build_algebra(&fixture(FixtureName::G2), field);
        let e = build_e(&alg).unwrap().module;
        assert!(is_isomorphic(&e, &build_trivial(&alg), 0).is_isomorphic());
    }
}

#[test]
fn k_projective_iff_free_when_projective_over_k() {
    for f in FixtureName::ALL {
        for field in FIELDS {
            let cat = fixture(f);
            if !projective_over_k(&cat, field).projective {
                continue;
            }
            let alg = build_algebra(&cat, field);
            let (k, _) = build_k(&alg).unwrap();
            assert_eq!(is_projective(&k).projective, is_free(&cat).unwrap().is_free, "{f} {field}");
        }
    }
}

#[test]
fn one_gorenstein_iff_free_when_projective_over_k() {
    for f in FixtureName::ALL {
        for field in FIELDS {
            let cat = fixture(f);
            if !projective_over_k(&cat, field).projective {
                continue;
            }
            let r = gorenstein_report(&build_algebra(&cat, field), 8);
            assert_eq!(r.d.is_some_and(|d| d <= 1), is_free(&cat).unwrap().is_free, "{f} {field}");
        }
    }
}

#[test]
fn gp_with_finite_pd_is_projective() {
    for f in FixtureName::ALL {
        for field in FIELDS {
            let alg = build_algebra(&fixture(f), field);
            let range = ExtRange::from_report(&gorenstein_report(&alg, 8), 8);
            let mut modules: Vec<Module> = vec![regular_module(&alg), build_trivial(&alg)];
            modules.extend(build_k(&alg).map(|(k, _)| k));
            modules.extend(build_e(&alg).map(|e| e.module));
            modules.extend((1..=alg.category().num_objects()).map(|t| column_projective(&alg, t).unwrap()));
            for m in &modules {
                let gp = is_gorenstein_projective(m, range).verdict.is_positive();
                if gp && projective_dimension(m, 8).is_finite() {
                    assert!(is_projective(m).projective, "{f} {field}");
                }
            }
        }
    }
}

#[test]
fn filtration_quotients_gp_implies_e_gp() {
    for f in free_fixtures() {
        for field in FIELDS {
            let cat = fixture(f);
            if !projective_over_k(&cat, field).projective {
                continue;
            }
            let alg = build_algebra(&cat, field);
            let range = ExtRange::from_report(&gorenstein_report(&alg, 8), 8);
            let filt = build_filtration(&alg).unwrap();
            let all_gp = filt.steps.iter().all(|s| is_gorenstein_projective(&s.quotient, range).verdict.is_positive());
            let e_gp = is_gorenstein_projective(&filt.e.module, range).verdict.is_positive();
            assert!(all_gp && e_gp, "{f} {field}");
        }
    }
}
