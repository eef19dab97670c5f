//! Freeness by mediating morphisms, cross-checked against unique factorization,
//! and the through-object sets `V(α)` with their sums `t_w(α)`.

use eicat::catgen::{fixture, from_poset, FixtureName};
use eicat::exactla::Field;
use eicat::freeness::{check_ufp, compute_t, compute_v, is_free, unfactorizable_decomposition};

fn main() {
    for f in FixtureName::ALL {
        let cat = fixture(f);
        let v = is_free(&cat).unwrap();
        let ufp = check_ufp(&cat).unwrap();
        match &v.witness {
            None => println!("{f}: free (UFP {})", ufp.is_none()),
            Some(w) => println!("{f}: not free, {w}"),
        }
    }

    let z = fixture(FixtureName::Z2Orb);
    let alpha = z.find_morphism("alpha").unwrap();
    for w in compute_v(&z, alpha) {
        for field in [Field::Rationals, Field::Prime(2)] {
            println!("t_{}(alpha) over {field} = {}", z.object_name(w), compute_t(&z, field, alpha, w).unwrap().render(&z));
        }
    }

    // a chain a < b < c: the long arrow decomposes into two unfactorizables
    let chain = from_poset(&["a", "b", "c"], &[(0, 1), (1, 2)]).unwrap();
    let long = chain.find_morphism("a<c").unwrap();
    let parts: Vec<&str> = unfactorizable_decomposition(&chain, long).unwrap().iter().map(|&m| chain.name(m)).collect();
    println!("a<c = {}", parts.join(" . "));
}
