//! Compares the recursive quasi-shuffle product with the surjection-enumeration oracle.

use quasishuffle::words::{qs_oracle_product, IntegerAddition, Word, WordAlgebra};

fn main() {
    let b = WordAlgebra::integer();
    let u = Word::from_values(&[1, 2]);
    let v = Word::from_values(&[3, 1]);
    let fast = b.product_words(&u, &v);
    let slow = qs_oracle_product(&IntegerAddition, &u, &v);
    println!("{u} * {v} = {fast}");
    println!("oracle agrees: {}", fast == slow);
}
