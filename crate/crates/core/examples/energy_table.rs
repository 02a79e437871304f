// FT, STFT and WT energy indices for the six fault types of the published
// energy table, next to the published values (which come from a different
// simulation and are shown for orientation only).
//
//     cargo run --example energy_table

use faultwave::cli::{suite_table, RunConfig, ScenarioSuite};
use faultwave::detect::{TableRow, PUBLISHED_ENERGY_REFERENCE};

fn main() -> faultwave::Result<()> {
    let table = suite_table(&ScenarioSuite::table1(RunConfig::default()))?;
    print!("{}", table.to_text());

    println!("\nscenario  ordering WT > STFT > FT   published FT / STFT / WT");
    for (row, (name, ft, stft, wt)) in table.rows.iter().zip(PUBLISHED_ENERGY_REFERENCE) {
        if let TableRow::Ok(r) = row {
            println!("{:<9} {:<24} {ft} / {stft} / {wt}", r.scenario, r.wavelet_dominates());
            assert_eq!(r.scenario, name);
        }
    }

    let conditions = suite_table(&ScenarioSuite::table1_conditions(RunConfig::default()))?;
    let detected = conditions.ok_rows().filter(|r| r.all_detected()).count();
    println!("\nall three methods detect in {detected} of {} fault/condition pairs", conditions.rows.len());
    Ok(())
}
