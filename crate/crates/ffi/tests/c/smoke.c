#include <stdio.h>
#include <string.h>

#include "cellular.h"

#define EXPECT(cond)                                              \
    do {                                                          \
        if (!(cond)) {                                            \
            fprintf(stderr, "line %d: %s\n", __LINE__, #cond);    \
            return 1;                                             \
        }                                                         \
    } while (0)

int main(void) {
    size_t k3[9] = {0, 1, 1, 1, 0, 1, 1, 1, 0};
    CellularScheme *s = NULL;
    EXPECT(cellular_scheme_from_matrix(3, k3, &s) == CELLULAR_STATUS_OK);

    size_t rank = 0, dim = 0;
    EXPECT(cellular_scheme_rank(s, &rank) == CELLULAR_STATUS_OK && rank == 2);
    EXPECT(cellular_radical_dim(s, 3, &dim) == CELLULAR_STATUS_OK && dim == 1);

    char *frame = NULL;
    EXPECT(cellular_frame_number(s, 0, &frame) == CELLULAR_STATUS_OK);
    EXPECT(strcmp(frame, "9") == 0);
    cellular_string_free(frame);

    EXPECT(cellular_radical_dim(s, 4, &dim) == CELLULAR_STATUS_NOT_PRIME);
    EXPECT(cellular_last_error() != NULL);
    cellular_scheme_free(s);

    size_t bad[4] = {0, 1, 1, 1};
    EXPECT(cellular_scheme_from_matrix(2, bad, &s) == CELLULAR_STATUS_INVALID_SCHEME);
    printf("ok\n");
    return 0;
}
