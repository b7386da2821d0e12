#include <stdio.h>
#include <string.h>
#include "khopf.h"

static int check(KhopfStatus s) {
    if (s != KHOPF_STATUS_OK) {
        fprintf(stderr, "status %d: %s\n", (int)s, khopf_last_error());
        return 1;
    }
    return 0;
}

int main(void) {
    KhopfPoly *gq = NULL;
    char *text = NULL;
    if (check(khopf_poly_basis("GQ", "3,2", NULL, 7, 7, &gq))) return 1;
    if (check(khopf_poly_expand(gq, "GP", KHOPF_FORMAT_TEXT, &text))) return 1;
    printf("%s\n", text);
    khopf_string_free(text);
    khopf_poly_free(gq);

    KhopfPeak *q = NULL, *p = NULL;
    if (check(khopf_peak_basis("opeak", "3,1", &q))) return 1;
    if (check(khopf_peak_convert(q, "tpeak", &p))) return 1;
    if (check(khopf_peak_to_string(p, &text))) return 1;
    printf("%s\n", text);
    khopf_string_free(text);
    khopf_peak_free(p);
    khopf_peak_free(q);

    KhopfPoly *bad = NULL;
    KhopfStatus s = khopf_poly_basis("nope", "1", NULL, 2, 2, &bad);
    printf("%d %s\n", (int)s, strlen(khopf_last_error()) > 0 ? "message" : "empty");
    return 0;
}
