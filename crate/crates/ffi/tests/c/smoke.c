#include <stdio.h>
#include <string.h>
#include "shtuka.h"

#define CHECK(x) do { if ((x) != SHTUKA_STATUS_OK) { fprintf(stderr, "%s: %s\n", #x, shtuka_last_error()); return 1; } } while (0)

int main(void) {
    ShtukaRing *f2 = NULL, *r = NULL;
    CHECK(shtuka_ring_truncated(2, 2, "eps", &f2));
    CHECK(shtuka_ring_with_zeta(f2, "eps", &r));

    const char *m[] = {"z - eps"};
    ShtukaLocal *sh = NULL;
    CHECK(shtuka_local_new(r, 1, m, 0, 12, &sh));
    bool bounded = false;
    CHECK(shtuka_local_is_bounded(sh, 1, &bounded));
    uint64_t orders[2];
    CHECK(shtuka_local_tower_orders(sh, 2, 4, orders));
    printf("bounded %d orders %llu %llu\n", bounded, (unsigned long long)orders[0], (unsigned long long)orders[1]);

    if (shtuka_ring_with_zeta(f2, "1", &r) != SHTUKA_STATUS_INVALID_ARGUMENT || shtuka_last_error() == NULL) {
        return 2;
    }
    shtuka_local_free(sh);
    shtuka_ring_free(r);
    shtuka_ring_free(f2);
    return 0;
}
