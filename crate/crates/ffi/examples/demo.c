/* Compares two radicals and checks a certificate through the C API. */
#include <stdio.h>

#include "seshadri.h"

int main(void) {
    SeshadriRadical *a = NULL, *b = NULL;
    if (seshadri_radical_new("4/3", 1, &a) != SESHADRI_STATUS_OK ||
        seshadri_radical_new("2", 2, &b) != SESHADRI_STATUS_OK) {
        fprintf(stderr, "%s\n", seshadri_last_error_message());
        return 1;
    }
    int32_t ord = 0;
    seshadri_radical_cmp(a, b, &ord);
    char *sa = NULL, *sb = NULL;
    seshadri_radical_to_string(a, &sa);
    seshadri_radical_to_string(b, &sb);
    printf("%s %s %s\n", sa, ord < 0 ? "<" : ord > 0 ? ">" : "=", sb);
    seshadri_string_free(sa);
    seshadri_string_free(sb);
    seshadri_radical_free(a);
    seshadri_radical_free(b);

    char *doc = NULL;
    if (seshadri_abelian_json(2, "ppas-exact", &doc) != SESHADRI_STATUS_OK) {
        fprintf(stderr, "%s\n", seshadri_last_error_message());
        return 1;
    }
    SeshadriStatus status = seshadri_verify_json(doc);
    seshadri_string_free(doc);
    printf("verify: %d\n", (int)status);

    status = seshadri_surface_json(4, 3, &doc);
    printf("alpha too large: %d %s\n", (int)status, seshadri_last_error_message());
    return 0;
}
