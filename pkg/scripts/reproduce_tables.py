#!/usr/bin/env python3
"""Recompute every reference table from the embedded dataset and summarize the
diff, listing each erratum with its published and recomputed value."""

from inspectkit.dataset import reference_dataset
from inspectkit.tables import reproduce_table


def main() -> None:
    ds = reference_dataset()
    grand_errata = 0
    for table_id in (2, 3, 4, 5, 6, 7):
        rep = reproduce_table(ds, table_id)
        errata = rep.errata()
        grand_errata += len(errata)
        print(f"table {table_id}: {rep.matched()}/{rep.compared()} cells match  [{rep.title}]")
        for cell in errata:
            print(f"    erratum {cell.row} @ {cell.column}: published {cell.published}, "
                  f"recomputed {cell.computed}")
    print(f"\n{grand_errata} errata across all tables")


if __name__ == "__main__":
    main()
