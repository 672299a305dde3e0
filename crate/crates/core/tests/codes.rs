use lcdcodes::codes::{griesmer_defect, macwilliams_dual_distribution, min_weight, InnerProduct, LinearCode};
use lcdcodes::enumerate::Exec;
use lcdcodes::galois::make_field;
use lcdcodes::linalg::MatrixOverField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: u64 = 1 << 22;

fn random_code(rng: &mut ChaCha8Rng) -> Option<LinearCode> {
    let (p, m) = [(2, 1), (3, 1), (2, 2), (5, 1)][rng.gen_range(0..4)];
    let f = make_field(p, m).unwrap();
    let n = rng.gen_range(2..=14usize);
    let k = rng.gen_range(1..=7usize.min(n - 1));
    let rows = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..f.order())).collect()).collect();
    let g = MatrixOverField::from_rows(&f, rows).unwrap();
    let inner = if m == 2 && rng.gen_bool(0.5) { InnerProduct::Hermitian } else { InnerProduct::Euclidean };
    LinearCode::from_generator(&g, inner).ok()
}

fn samples() -> Vec<LinearCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = Vec::new();
    while out.len() < 200 {
        if let Some(c) = random_code(&mut rng) {
            out.push(c);
        }
    }
    out
}

fn same_row_space(a: &MatrixOverField, b: &MatrixOverField) -> bool {
    a.rank() == b.rank() && a.vconcat(b).unwrap().rank() == a.rank()
}

#[test]
fn hull_identities() {
    for c in samples() {
        let h = c.hull_dimension();
        assert_eq!(h, c.hull_dimension_by_intersection());
        assert_eq!(h, c.dual().hull_dimension());
        assert_eq!(c.is_lcd(), h == 0);
        assert!(same_row_space(c.dual().dual().generator(), c.generator()));
        assert_eq!(c.dimension() + c.dual().dimension(), c.length());
    }
}

#[test]
fn macwilliams_matches_dual_enumeration() {
    let mut checked = 0;
    for c in samples() {
        let d = c.dual();
        if d.check_budget(BUDGET).is_err() || c.check_budget(BUDGET).is_err() {
            continue;
        }
        let w = c.weight_distribution(BUDGET, Exec::default()).unwrap();
        let q = c.field().order();
        assert_eq!(
            macwilliams_dual_distribution(&w, c.length(), c.dimension(), q).unwrap(),
            d.weight_distribution(BUDGET, Exec::default()).unwrap()
        );
        checked += 1;
    }
    assert!(checked > 150);
}

#[test]
fn distance_and_griesmer() {
    for c in samples() {
        let w = c.weight_distribution(BUDGET, Exec::default()).unwrap();
        assert_eq!(w.iter().sum::<u64>(), (c.field().order() as u64).pow(c.dimension() as u32));
        let d = c.min_distance(BUDGET, Exec::default()).unwrap();
        assert_eq!(Some(d), min_weight(&w));
        assert!(griesmer_defect(c.length(), c.dimension(), d, c.field().order()) >= 0);
    }
}

#[test]
fn sequential_and_parallel_agree() {
    for c in samples().into_iter().take(40) {
        assert_eq!(
            c.weight_distribution(BUDGET, Exec::Sequential).unwrap(),
            c.weight_distribution(BUDGET, Exec::default()).unwrap()
        );
    }
}

#[test]
fn griesmer_examples() {
    assert_eq!(griesmer_defect(24, 12, 6, 2), 4);
    assert_eq!(griesmer_defect(2, 1, 2, 2), 0);
    assert_eq!(griesmer_defect(8, 4, 4, 5), 1);
}

#[test]
fn report_line_format() {
    let f = make_field(2, 1).unwrap();
    let g = MatrixOverField::from_rows(&f, vec![vec![1, 1]]).unwrap();
    let c = LinearCode::from_generator(&g, InnerProduct::Euclidean).unwrap();
    let r = c.report(BUDGET, Exec::Sequential).unwrap();
    assert_eq!(r.to_string(), "[2,1,2]_2 inner=E hull=1 lcd=n fsd=y griesmer_defect=0");
    assert_eq!(r.weight_csv(), "i,A_i\n0,1\n2,1\n");
}
