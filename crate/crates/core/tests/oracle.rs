use quasishuffle::words::{qs_oracle_product, IntegerAddition, LetterMonoid, NullMonoid, TruncatedAddition, Word, WordAlgebra, WordSeries, BracketRegime};
use quasishuffle::algebra::QuasiShuffle;

fn all_words(letters: u32, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::<u32>::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (1..=letters).map(move |l| {
                let mut v = w.clone();
                v.push(l);
                v
            }))
            .collect();
        out.extend(layer.iter().map(|v| Word::from_values(v)));
    }
    out
}

fn exhaustive<M: LetterMonoid + Clone>(b: &WordAlgebra<M>, max_len: usize) {
    let words = all_words(3, max_len);
    for u in &words {
        for v in &words {
            assert_eq!(b.product_words(u, v), qs_oracle_product(b.monoid(), u, v), "{u} * {v}");
        }
    }
}

#[test]
fn integer_model_matches_oracle() {
    exhaustive(&WordAlgebra::integer(), 3);
}

#[test]
fn shuffle_and_truncated_match_oracle() {
    exhaustive(&WordAlgebra::new(NullMonoid, BracketRegime::Continuous), 3);
    exhaustive(&WordAlgebra::new(TruncatedAddition { cap: 2 }, BracketRegime::Continuous), 3);
}

#[test]
fn golden_eleven_star_eleven() {
    let b = WordAlgebra::integer();
    let one_one = WordSeries::basis(Word::from_values(&[1, 1]));
    let got = b.product(&one_one, &one_one).unwrap().to_string();
    assert_eq!(got, include_str!("golden/11_star_11.txt").trim_end());
    assert_eq!(qs_oracle_product(&IntegerAddition, &Word::from_values(&[1, 1]), &Word::from_values(&[1, 1])).to_string(), got);
}

#[test]
fn half_shuffle_example() {
    let b = WordAlgebra::integer();
    let x = WordSeries::basis(Word::from_values(&[2, 3]));
    let y = WordSeries::basis(Word::from_values(&[1]));
    assert_eq!(b.prec(&x, &y).unwrap().to_string(), "2 3 1 + 2 1 3 + 2 4");
}
