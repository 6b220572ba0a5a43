//! Exact scalars: rationals, polynomial unknowns, a quadratic extension,
//! and sparse elimination.

use l1deform::exact::{poly_roots_rational, PolyScalar, Rational, Ring, SolveOutcome, SparseMatrix};

fn main() -> l1deform::Result<()> {
    let a: Rational = "119/845".parse()?;
    let b = Rational::frac(-1, 5);
    println!("a + b = {}", &a + &b);
    println!("a * b = {}", &a * &b);

    // 5x^2 + x over Q[x]
    let x = PolyScalar::x(Ring::poly())?;
    let p = x.checked_mul(&x)?.scale(&Rational::from_int(5)).checked_add(&x)?;
    println!("p = {p}, rational roots {:?}", poly_roots_rational(&p)?.roots.iter().map(ToString::to_string).collect::<Vec<_>>());

    // y with y^2 = 432/2197
    let ring = Ring::quadratic(Rational::frac(432, 2197));
    let y = PolyScalar::y(ring)?;
    println!("y * y = {}", y.checked_mul(&y)?);
    println!("1 / y = {}", y.checked_inv()?);

    let m = SparseMatrix::from_triplets(3, 3, [(0, 0, Rational::from_int(2)), (0, 1, Rational::one()), (1, 1, Rational::from_int(3)), (2, 0, Rational::from_int(4)), (2, 1, Rational::from_int(5))])?;
    println!("rank = {}", m.rank()?);
    match m.solve(&[Rational::one(), Rational::from_int(3), Rational::from_int(7)])? {
        SolveOutcome::Solvable(s) => println!("solution {:?}", s.iter().map(ToString::to_string).collect::<Vec<_>>()),
        SolveOutcome::Infeasible(v) => println!("infeasible, witness {:?}", v.iter().map(ToString::to_string).collect::<Vec<_>>()),
    }
    Ok(())
}
