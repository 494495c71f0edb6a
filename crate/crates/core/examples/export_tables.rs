fn main() {
    let v = tiling123::tilings::export_tables();
    println!("{}", serde_json::to_string_pretty(&v).unwrap());
}
