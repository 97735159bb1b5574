//! Prints exact hex renderings of a batch of Li coefficients; used to
//! confirm bit-identical results between the parallel and sequential
//! builds (fixed-tree reduction has one bracketing in both).

use li_lab::li::lambda_zero_sum_batch;
use li_lab::numerics::PrecisionContext;
use li_lab::secondary_zeta::TailModel;
use li_lab::zeros::ZeroTable;

fn main() {
    let table = ZeroTable::load(&li_lab::bundled_data_path("zeros-first100.txt"), 30).unwrap();
    let ctx = PrecisionContext::new(192);
    let tail = TailModel::for_table(&table, &ctx).unwrap();
    let ns: Vec<u32> = (1..=16).collect();
    for v in lambda_zero_sum_batch(&ns, &table, Some(&tail), &ctx).unwrap() {
        let (neg, digits, exp) = v.value.value.to_sign_string_exp(16, None);
        println!("{} {}{}e{:?}", v.n, if neg { "-" } else { "" }, digits, exp);
    }
}
