#include <math.h>
#include <stdio.h>
#include <string.h>

#include "subshift.h"

#define CHECK(cond)                                                    \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                  \
        }                                                              \
    } while (0)

int main(void) {
    SbProfile *p = NULL;
    CHECK(sb_profile_new(2, &p) == SB_STATUS_OK);
    CHECK(sb_profile_add_term(p, 1.0, 1.0, 0, 5, 1, 0, false) == SB_STATUS_OK);

    SbBetaSolution sol;
    CHECK(sb_solve_beta(p, SB_MODE_Z_CONNECTED, 0.0, 0.0, 0.0, &sol) == SB_STATUS_OK);
    CHECK(sol.feasible);
    CHECK(fabs(sol.beta_star - 1.754878) < 1e-6);

    CHECK(sb_solve_beta(p, SB_MODE_GENERAL, 0.0, 0.0, 0.0, &sol) == SB_STATUS_OK);
    CHECK(!sol.feasible);
    sb_profile_free(p);

    SbWordSet *ws = NULL;
    CHECK(sb_wordset_from_json("{\"alphabet_size\": 2, \"forbidden_words\": [\"11\"]}", &ws) == SB_STATUS_OK);
    uint64_t count = 0;
    CHECK(sb_count_admissible_words(ws, 10, &count) == SB_STATUS_OK);
    CHECK(count == 144);
    double growth = 0.0;
    CHECK(sb_growth_transfer_matrix(ws, &growth) == SB_STATUS_OK);
    CHECK(fabs(growth - 1.6180339887) < 1e-9);
    sb_wordset_free(ws);

    CHECK(sb_wordset_from_json("{\"alphabet_size\": 2", &ws) == SB_STATUS_PARSE);
    CHECK(sb_last_error() != NULL && strlen(sb_last_error()) > 0);

    printf("ok %s\n", sb_version());
    return 0;
}
