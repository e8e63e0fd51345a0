#include <stdio.h>
#include "bergman_csym.h"

int main(void) {
    BcComplex alpha = {0.5, 0.0};
    BcLft *phi = NULL;
    if (bc_lft_involution(alpha, &phi) != BC_STATUS_OK) return 1;

    BcLftKind kind;
    bool automorphism;
    bc_lft_classify(phi, &kind, &automorphism);

    BcOperator *op = NULL;
    if (bc_composition_matrix(phi, 0.0, 31, &op) != BC_STATUS_OK) return 1;
    double residual = 0.0;
    bc_csym_residual_plain(op, &residual);
    printf("kind=%d automorphism=%d dim=%zu plain_residual=%.3e\n",
           (int)kind, (int)automorphism, bc_operator_dim(op), residual);

    BcLft *bad = NULL;
    BcComplex a = {3, 0}, z = {0, 0}, one = {1, 0};
    BcStatus st = bc_lft_new(a, z, z, one, &bad);
    char msg[128];
    bc_last_error_message(msg, sizeof msg);
    printf("status=%d message=%s\n", (int)st, msg);

    bc_operator_free(op);
    bc_lft_free(phi);
    return 0;
}
