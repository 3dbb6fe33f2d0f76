"""Good/bad table of the 6-vertex block classes and where they come from."""

from planar_turan.blocks import bad_pairs, decompose
from planar_turan.oracle import build_catalog, verify_lemma2, verify_observation1
from planar_turan.plane_map import PlaneMap


def main():
    catalog = build_catalog(6)
    print(f"{'alias':12} {'e':>3} {'f3':>3} holes  good  bad pairs")
    for e in catalog["classes"]["6"]:
        (b,) = decompose(PlaneMap.from_rotation(e["rotation"]))
        pairs = bad_pairs(b)
        print(f"{e['alias']:12} {e['e']:>3} {e['f3']:>3} {str(e['holes']):6} {str(e['good']):5} {pairs}")
    rep = verify_lemma2(catalog)
    print("6-vertex classes reached from each 5-vertex class:", rep["children_per_5_block"])
    print("every 6-vertex class reached:", rep["all_six_from_five"])
    print("7-vertex hole extensions of the bad classes all good:", rep["seven_from_bad_all_good"])
    print("good + hole insertion stays good:", verify_observation1(catalog))


if __name__ == "__main__":
    main()
