use annular_core::moments::*;
use annular_core::AnnulusShape;
use std::time::Instant;

fn main() {
    let shape = AnnulusShape::new(vec![4, 2, 2]).unwrap();
    let w = wigner_cumulants();
    let t = Instant::now();
    let a = alpha_third_closed(&shape, 14).unwrap();
    println!("closed:   {:?} -> {}", t.elapsed(), a.render());
    let t = Instant::now();
    let b = alpha_third_graphsum(&shape, 14).unwrap();
    println!("graphsum: {:?} -> {}", t.elapsed(), b.render());
    let t = Instant::now();
    let c = alpha_from_cumulants(&shape, &w, 14).unwrap();
    println!("psnc:     {:?} -> {}", t.elapsed(), c.render());
    let shape6 = AnnulusShape::new(vec![2, 2, 2]).unwrap();
    let t = Instant::now();
    let _ = alpha_third_graphsum(&shape6, 14).unwrap();
    println!("graphsum(2,2,2): {:?}", t.elapsed());
}
