/* Builds M(T) and K(T^diamond) for an eight-element algebra and checks
 * that they are isomorphic. */
#include <stdio.h>
#include "kanforge.h"

static const char *ALG =
    "algebra t\n"
    "elements 0 a b c d e f 1\n"
    "order 0<a 0<b a<c b<c c<d d<e d<f e<1 f<1\n"
    "knot 0:1 a:f b:e c:d d:c e:b f:a 1:0\n"
    "neg 0:1 a:1 b:1 c:1 d:c e:b f:a 1:0\n";

int main(void) {
    KfAlgebra *t = NULL, *m = NULL, *d = NULL, *k = NULL;
    bool found = false;
    size_t mapping[9];
    if (kf_algebra_parse(ALG, &t) != KF_STATUS_OK ||
        kf_apply(t, "monteiro", &m) != KF_STATUS_OK ||
        kf_apply(t, "diamond", &d) != KF_STATUS_OK ||
        kf_apply(d, "kalman", &k) != KF_STATUS_OK ||
        kf_find_isomorphism(m, k, &found, mapping, 9) != KF_STATUS_OK) {
        fprintf(stderr, "error: %s\n", kf_last_error_message());
        return 2;
    }
    printf("sizes %zu %zu isomorphic %d\n", kf_algebra_size(m), kf_algebra_size(k), found);
    kf_algebra_free(t);
    kf_algebra_free(m);
    kf_algebra_free(d);
    kf_algebra_free(k);
    return found ? 0 : 1;
}
