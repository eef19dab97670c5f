//! Deciding isomorphism of modules by hom-space dimensions and a search for
//! an invertible hom.

use eicat::catalg::{build_algebra, column_projective, direct_sum, is_isomorphic, regular_module, IsoVerdict};
use eicat::catgen::{fixture, FixtureName};
use eicat::exactla::Field;
use eicat::gmodules::build_trivial;

fn main() {
    for field in [Field::Rationals, Field::Prime(2)] {
        let alg = build_algebra(&fixture(FixtureName::Z2Orb), field);
        let cols: Vec<_> = (1..=2).map(|t| column_projective(&alg, t).unwrap()).collect();
        let sum = direct_sum(&alg, &cols);
        match is_isomorphic(&regular_module(&alg), &sum.module, 7) {
            IsoVerdict::Isomorphic(h) => {
                println!("{field}: A = C1 + C2 via");
                for (x, m) in h.dump().components {
                    println!("at {x}:\n{m}");
                }
            }
            other => println!("{field}: {other:?}"),
        }
    }
    let kron = build_algebra(&fixture(FixtureName::Kron), Field::Rationals);
    let verdict = is_isomorphic(&build_trivial(&kron), &column_projective(&kron, 2).unwrap(), 0);
    if let IsoVerdict::NotIsomorphic(why) = verdict {
        println!("kron: trivial vs C2 not isomorphic ({why})");
    }
}
