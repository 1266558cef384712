fn main() {
    println!("dehnforge");
}
