#![allow(dead_code)]

use proptest::prelude::*;
use smith_core::{Field, Matrix};

pub fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::PrimeField(2)),
        Just(Field::PrimeField(5)),
        Just(Field::PrimeField(7)),
    ]
}

pub fn matrix_in(field: Field, max: usize) -> impl Strategy<Value = Matrix> {
    (0..=max, 0..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-4i64..=4, r * c).prop_map(move |v| Matrix::from_i64(field, r, c, &v))
    })
}

pub fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    field().prop_flat_map(move |f| matrix_in(f, max))
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    a.try_mul(b).expect("shapes agree")
}
