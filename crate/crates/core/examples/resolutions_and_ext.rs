//! Projective resolutions by greedy covers, projective dimension and Ext.

use eicat::catalg::{build_algebra, regular_module};
use eicat::catgen::{fixture, FixtureName};
use eicat::exactla::Field;
use eicat::gmodules::build_trivial;
use eicat::homalg::{ext, free_resolution, full_resolution, projective_dimension};

fn main() {
    let kron = build_algebra(&fixture(FixtureName::Kron), Field::Rationals);
    let k = build_trivial(&kron);
    let res = free_resolution(&k, 8);
    println!("kron: syzygy dims {:?}, pd {}", res.syzygy_dims(), projective_dimension(&k, 8));
    let e = ext(&k, &regular_module(&kron), 1);
    println!("dim Ext^1(k, A) = {} (by ranks {})", e.dim, e.dim_by_ranks);

    let g2 = build_algebra(&fixture(FixtureName::G2), Field::Prime(2));
    let k = build_trivial(&g2);
    let res = full_resolution(&k, 4);
    println!("F_2[Z/2]: syzygy dims {:?}, exact {}, pd {}", res.syzygy_dims(), res.is_exact(), projective_dimension(&k, 8));
    for i in 1..=3 {
        println!("dim Ext^{i}(k, k) = {}", ext(&k, &k, i).dim);
    }
}
