#include <math.h>
#include <stdio.h>
#include <string.h>

#include "polycond.h"

int main(void) {
    PcPolynomial *w = NULL;
    if (pc_polynomial_wilkinson(20, &w) != PC_STATUS_OK) {
        fprintf(stderr, "construct: %s\n", pc_last_error());
        return 1;
    }
    double a = 0.0;
    if (pc_root_condition_log10(w, 14, 0, &a) != PC_STATUS_OK) {
        return 2;
    }
    double b = 0.0;
    if (pc_condition_b_log10(w, 0, 1, &b) != PC_STATUS_OK) {
        return 3;
    }
    PcStatus s = pc_root_condition_log10(w, 20, 0, &a);
    if (s != PC_STATUS_INVALID_ARGUMENT || strlen(pc_last_error()) == 0) {
        return 4;
    }
    pc_polynomial_free(w);
    printf("%.6f %.6f\n", a, b);
    return 0;
}
