pub fn run() -> i32 {
    eprintln!("not yet implemented");
    1
}
