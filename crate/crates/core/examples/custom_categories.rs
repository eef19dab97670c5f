//! Building categories from posets and group tables, then analyzing them.

use eicat::catalg::build_algebra;
use eicat::catgen::{cyclic_table, from_group, from_poset};
use eicat::exactla::Field;
use eicat::freeness::is_free;
use eicat::homalg::{gorenstein_report, projective_over_k};

fn main() {
    // the "N" poset a < c, b < c, b < d is free
    let n = from_poset(&["a", "b", "c", "d"], &[(0, 2), (1, 2), (1, 3)]).unwrap();
    println!("N poset: free {}", is_free(&n).unwrap().is_free);
    println!("N poset: {:?}", gorenstein_report(&build_algebra(&n, Field::Rationals), 8));

    for order in [2, 3] {
        let g = from_group(&cyclic_table(order)).unwrap();
        for field in [Field::Rationals, Field::Prime(2), Field::Prime(3)] {
            let r = gorenstein_report(&build_algebra(&g, field), 8);
            println!("Z/{order} over {field}: projective over k {}, id {}", projective_over_k(&g, field).projective, r.id_left);
        }
    }
}
