//! Writing bases and maps to JSON and checking them back from disk, as the
//! `check-basis` and `choi` subcommands do.

use choi_duality::harness::{self, io};
use choi_duality::random::{BasisKind, Sampler};
use choi_duality::{LinearMap, Tolerances};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();
    let dir = std::env::temp_dir().join(format!("choi-duality-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;

    let basis = Sampler::new(1).basis(2, BasisKind::RankOneZeta);
    let basis_path = dir.join("basis.json");
    io::save(&io::BasisJson::from(&basis), &basis_path)?;
    let map_path = dir.join("map.json");
    io::save(&io::MapJson::from(&LinearMap::identity(2)), &map_path)?;

    let loaded = io::load_basis(&basis_path)?;
    println!("round trip exact: {}", loaded == basis);

    let report = harness::cmd_check_basis(&basis_path, &tol);
    println!("{}", report.to_table());
    let report = harness::cmd_choi(&map_path, &basis_path, &tol);
    println!("{}", report.to_table());

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
