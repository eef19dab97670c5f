//! The module E with its distinguished basis, the submodule K, the exact
//! sequence 0 -> K -> E -> k -> 0 and the object-order filtration.

use eicat::catalg::build_algebra;
use eicat::catgen::{fixture, FixtureName};
use eicat::exactla::Field;
use eicat::gmodules::{build_e, build_filtration, build_ses, k_structure_decomposition};

fn main() {
    let alg = build_algebra(&fixture(FixtureName::Z2Orb), Field::Prime(2));
    let cat = alg.category();
    let e = build_e(&alg).unwrap();
    let x1 = cat.find_object("x1").unwrap();
    let alpha = cat.find_morphism("alpha").unwrap();
    let image = e.module.map(alpha).column(0);
    println!("E(alpha) e_x2 = {}", e.basis.render(&alg, x1, &image));
    print!("{}", e.module.describe());

    let ses = build_ses(&alg).unwrap();
    println!("sequence exact: {}", ses.exact());
    let dec = k_structure_decomposition(&alg).unwrap();
    println!("K splits into {} column duals, iso {}", dec.summands.len(), dec.isomorphism.is_isomorphism());

    let filt = build_filtration(&alg).unwrap();
    for step in &filt.steps {
        println!(
            "Y^{} at {}: sub dims {:?}, quotient embeds in C_{}: {}",
            step.t,
            cat.object_name(step.object),
            step.sub.graded_dims(),
            step.t,
            step.embedding_injective
        );
    }
    println!("filtration reaches E: {}", filt.reaches_e());

    let diamond = build_algebra(&fixture(FixtureName::Diamond), Field::Rationals);
    println!("diamond: {}", build_e(&diamond).unwrap_err());
}
