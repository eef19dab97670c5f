//! The category algebra, representable modules, hom spaces, duals and the
//! evaluation map into the double dual.

use eicat::catalg::{build_algebra, column_projective, dual_module, evaluation_map, hom_space, regular_module, vector_dual};
use eicat::catgen::{fixture, FixtureName};
use eicat::exactla::Field;
use eicat::gmodules::build_trivial;

fn main() {
    let alg = build_algebra(&fixture(FixtureName::Arrow), Field::Rationals);
    println!("dim kC = {}", alg.dim());
    let c1 = column_projective(&alg, 1).unwrap();
    let c2 = column_projective(&alg, 2).unwrap();
    println!("C1 {:?}, C2 {:?}", c1.graded_dims(), c2.graded_dims());
    println!("dim Hom(C1, C2) = {}", hom_space(&c1, &c2).dim());
    println!("C1* has total dim {}", dual_module(&c1).module.total_dim());
    print!("regular module:\n{}", regular_module(&alg).describe());
    print!("vector dual of the regular module:\n{}", vector_dual(&regular_module(&alg)).describe());

    let kron = build_algebra(&fixture(FixtureName::Kron), Field::Rationals);
    let ev = evaluation_map(&build_trivial(&kron));
    println!("Kronecker trivial module: dual dim {}, ev injective {}", ev.dual.module.total_dim(), ev.injective);
}
