//! Row reduction, kernels and quotients over Q and F_p.

use eicat::exactla::{quotient_basis, solve_linear, Field, Mat};

fn main() {
    for field in [Field::Rationals, Field::Prime(2), Field::Prime(3)] {
        let a = Mat::from_i64(field, 3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        let (r, pivots) = a.rref();
        println!("{field}: rank {} pivots {pivots:?}\n{r}", a.rank());
        let ker = a.kernel();
        for v in &ker {
            assert!(a.mul_vec(v).iter().all(|s| s.is_zero()));
        }
        println!("kernel dim {}", ker.len());
        let b = a.mul_vec(&[field.one(), field.zero(), field.one()]);
        let sol = solve_linear(&a, &b).unwrap();
        println!("particular solution {:?}, free parameters {}", sol.particular.map(|p| p.len()), sol.kernel.len());
    }
    // Q^3 modulo the line spanned by (1, 1, 1)
    let q = Field::Rationals;
    let e = |i: usize| (0..3).map(|j| q.from_i64((i == j) as i64)).collect::<Vec<_>>();
    let reps = quotient_basis(q, &[e(0), e(1), e(2)], &[vec![q.one(); 3]]).unwrap();
    println!("quotient dim {}", reps.len());
}
