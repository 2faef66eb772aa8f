use gailrs::expr::{parse, BinOp, Expr, Func, Node};
use proptest::prelude::*;

const DIM: usize = 3;

fn leaf() -> impl Strategy<Value = Node> {
    prop_oneof![
        (0.0..100.0f64).prop_map(Node::Num),
        (0u32..8).prop_map(|k| Node::Num(k as f64)),
        (0..DIM).prop_map(Node::Var),
        Just(Node::Prod),
    ]
}

fn tree() -> impl Strategy<Value = Node> {
    leaf().prop_recursive(6, 64, 2, |inner| {
        let op = prop_oneof![
            Just(BinOp::Add),
            Just(BinOp::Sub),
            Just(BinOp::Mul),
            Just(BinOp::Div),
            Just(BinOp::Pow)
        ];
        let f1 = prop_oneof![
            Just(Func::Sin),
            Just(Func::Cos),
            Just(Func::Tan),
            Just(Func::Exp),
            Just(Func::Log),
            Just(Func::Sqrt),
            Just(Func::Abs),
            Just(Func::Normcdf)
        ];
        let f2 = prop_oneof![Just(Func::Max), Just(Func::Min)];
        prop_oneof![
            inner.clone().prop_map(|a| Node::Neg(Box::new(a))),
            (op, inner.clone(), inner.clone()).prop_map(|(o, a, b)| Node::Bin(o, Box::new(a), Box::new(b))),
            (f1, inner.clone()).prop_map(|(f, a)| Node::Call(f, vec![a])),
            (f2, inner.clone(), inner).prop_map(|(f, a, b)| Node::Call(f, vec![a, b])),
        ]
    })
}

fn same(a: f64, b: f64) -> bool {
    a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan())
}

proptest! {
    #[test]
    fn render_parse_is_idempotent(root in tree()) {
        let e = Expr::new(root, DIM).unwrap();
        let once = parse(&e.render(), DIM).unwrap();
        let twice = parse(&once.render(), DIM).unwrap();
        prop_assert_eq!(&once, &twice);
        let x = [0.3, -1.7, 2.5];
        prop_assert!(same(e.eval(&x), once.eval(&x)), "{} vs {}", e.eval(&x), once.eval(&x));
    }

    #[test]
    fn batch_matches_scalar(root in tree(), pts in prop::collection::vec(-3.0..3.0f64, 0..(DIM * 20))) {
        let e = Expr::new(root, DIM).unwrap();
        let n = pts.len() / DIM;
        let pts = &pts[..n * DIM];
        let batch = e.eval_batch(pts, DIM).unwrap();
        prop_assert_eq!(batch.len(), n);
        for (row, v) in pts.chunks(DIM).zip(&batch) {
            prop_assert!(same(e.eval(row), *v));
        }
    }
}

#[test]
fn fixed_precedence_cases() {
    let v = |s: &str| parse(s, 1).unwrap().eval(&[0.0]);
    assert_eq!(v("2+3*4"), 14.0);
    assert_eq!(v("2^3^2"), 512.0);
    assert_eq!(v("-2^2"), -4.0);
    assert_eq!(v("2.^2.*3"), 12.0);
    assert!(v("(-8)^(1/3)").is_nan());
}

#[test]
fn documented_integrands_parse() {
    let e = parse("exp(-x1^2-x2^2)", 2).unwrap();
    assert_eq!(e.eval(&[0.0, 0.0]), 1.0);
    let e = parse("3/(5-4*cos(2*3.141592653589793*x))", 1).unwrap();
    assert_eq!(e.eval(&[0.0]), 3.0);
    let e = parse("7", 5).unwrap();
    assert_eq!(e.eval_batch(&[0.0; 25], 5).unwrap(), vec![7.0; 5]);
    let e = parse("prod(x)", 2).unwrap();
    assert_eq!(e.eval(&[0.5, 0.5]), 0.25);
    let e = parse("max(100*exp(0.05*x1)-100,0)", 1).unwrap();
    assert_eq!(e.eval(&[0.0]), 0.0);
    let e = parse("x1.^2.*x2.^2.*x3.^2", 3).unwrap();
    assert_eq!(e.eval(&[1.0, 2.0, 3.0]), 36.0);
}
