use hyperstruct::hypergroup::Hypergroup;
use hyperstruct::io::{to_json, to_text};
use hyperstruct::quotients::GroupTable;

fn main() {
    let dir = std::path::Path::new("examples");
    let ex37 = hyperstruct::io::parse_text(
        "0 x y z u v -x -z\n\
         0 x y z u v -x -z\n\
         x y,v z,-x u x,-z -x 0,u y\n\
         y z,-x 0,u x y,v u x,-z -x\n\
         z u x v -x -z y 0\n\
         u x,-z y,v -x 0,u y z,-x x\n\
         v -x u -z y 0 x z\n\
         -x 0,u x,-z y z,-x x y,v u\n\
         -z y -x 0 x z u v\n",
    )
    .unwrap();
    let write = |name: &str, h: &Hypergroup| {
        let body = to_text(h).unwrap_or_else(|_| to_json(h));
        std::fs::write(dir.join(name), body).unwrap();
    };
    write("ex37.hg", &ex37);
    write("z2.hg", &Hypergroup::from_group(&GroupTable::cyclic(2)));
    write("z4.hg", &Hypergroup::from_group(&GroupTable::cyclic(4)));
    write("z6.hg", &Hypergroup::from_group(&GroupTable::cyclic(6)));
    write(
        "z2xz2.hg",
        &Hypergroup::from_group(&GroupTable::direct_product(
            &GroupTable::cyclic(2),
            &GroupTable::cyclic(2),
        )),
    );
    write("s3.hg", &Hypergroup::from_group(&GroupTable::symmetric_3()));
    write("total3.hg", &Hypergroup::total_hypergroup(3));
    write("rn6.hg", &Hypergroup::rn_hypergroup(6));
    write("tz3.hg", &Hypergroup::total_with_zero(3));
}
