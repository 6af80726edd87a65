#include <stdio.h>
#include <string.h>
#include "qcms.h"

static int fail(const char *what) {
    const char *msg = qcms_last_error_message();
    fprintf(stderr, "%s: %s\n", what, msg ? msg : "(no message)");
    return 1;
}

int main(void) {
    QcmsPresentation *p = NULL;
    if (qcms_presentation_new(QCMS_RING_FLOER, 1, 0, &p) != QCMS_STATUS_OK) return fail("presentation");
    char *text = NULL;
    if (qcms_presentation_to_text(p, &text) != QCMS_STATUS_OK) return fail("text");
    printf("floer r=1: %s\n", text);
    qcms_string_free(text);
    qcms_presentation_free(p);

    char *value = NULL;
    if (qcms_gw_formula(3, 8, 0, NULL, 0, &value) != QCMS_STATUS_OK) return fail("gw");
    printf("gw g=3 a=8: %s\n", value);
    int ok = strcmp(value, "5632/1") == 0;
    qcms_string_free(value);

    if (qcms_gw_formula(3, 1, 0, NULL, 0, &value) != QCMS_STATUS_DEGREE_BALANCE) return fail("balance");

    size_t len = 0;
    if (qcms_poincare(3, NULL, 0, &len) != QCMS_STATUS_BUFFER_TOO_SMALL) return fail("poincare size");
    uint64_t coeffs[64];
    if (len > 64 || qcms_poincare(3, coeffs, 64, &len) != QCMS_STATUS_OK) return fail("poincare");
    uint64_t total = 0;
    for (size_t i = 0; i < len; i++) total += coeffs[i];
    printf("poincare g=3 total: %llu\n", (unsigned long long)total);
    ok = ok && total == 48;

    QcmsStore *store = NULL;
    if (qcms_store_new(NULL, &store) != QCMS_STATUS_OK) return fail("store");
    char *json = NULL;
    if (qcms_verify(store, "iso", 2, &json) != QCMS_STATUS_OK) return fail("verify");
    ok = ok && strstr(json, "\"suite\"") != NULL;
    qcms_string_free(json);
    qcms_store_free(store);

    puts(ok ? "ok" : "mismatch");
    return ok ? 0 : 2;
}
