#include <math.h>
#include <stdio.h>
#include "harvest.h"

int main(void) {
    HarvestSetup *s = NULL;
    if (harvest_setup_new(1.0, 1.0, 0.01, &s) != HARVEST_STATUS_OK) return 1;
    HarvestElements el;
    if (harvest_elements(s, &el) != HARVEST_STATUS_OK) return 2;
    if (fabs(el.a - 0.0070882722326364159) > 1e-15) return 3;
    if (harvest_setup_set_topology(s, HARVEST_TOPOLOGY_CYLINDER, 1.0, 0) != HARVEST_STATUS_INVALID_PARAMETER) return 4;
    char buf[256];
    size_t n = harvest_last_error_message(buf, sizeof buf);
    if (n == 0) return 5;
    HarvestReport r;
    if (harvest_report(s, &r) != HARVEST_STATUS_OK || !r.harvested) return 6;
    harvest_setup_free(s);
    printf("ok %s %.6f\n", harvest_version(), r.concurrence / 1e-4);
    return 0;
}
