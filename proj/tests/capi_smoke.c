#include <stdio.h>
#include <string.h>

#include "tribill.h"

#define CHECK(c)                                              \
    do {                                                      \
        if (!(c)) {                                           \
            fprintf(stderr, "check failed: %s (line %d)\n", #c, __LINE__); \
            return 1;                                         \
        }                                                     \
    } while (0)

int main(void) {
    int stable = 0;
    CHECK(tribill_is_stable("2323132313123232313131", &stable) == TRIBILL_OK && stable == 1);
    CHECK(tribill_is_stable("123", &stable) == TRIBILL_OK && stable == 0);
    CHECK(tribill_is_stable("12a", &stable) == TRIBILL_INVALID_ARGUMENT);
    CHECK(strlen(tribill_last_error()) > 0);

    tribill_result* r = NULL;
    CHECK(tribill_call("membership", "{\"word\":\"2323132313123232313131\",\"at\":\"veech:3\"}", &r) == TRIBILL_OK);
    CHECK(strstr(tribill_result_json(r), "\"member\":true") != NULL);
    tribill_result_free(r);

    CHECK(tribill_call("membership", "{\"word\":\"123\",\"at\":\"veech:3\",\"raw\":true}", &r) == TRIBILL_PRECONDITION);
    CHECK(strstr(tribill_result_json(r), "\"status\":422") != NULL);
    tribill_result_free(r);

    CHECK(tribill_request("{\"op\":\"stability\",\"params\":{\"word\":\"12\"},\"bogus\":1}", &r) == TRIBILL_INVALID_ARGUMENT);
    tribill_result_free(r);

    CHECK(tribill_request_text("{\"op\":\"omega\",\"params\":{\"n\":\"4\"}}", &r) == TRIBILL_OK);
    CHECK(strstr(tribill_result_json(r), "\"vertices\"") != NULL);
    tribill_result_free(r);

    CHECK(tribill_call("tile",
                       "{\"family\":\"A\",\"n\":4,\"x1min\":0.3,\"x1max\":0.4,\"x2min\":0.3,\"x2max\":0.4,"
                       "\"nx\":8,\"ny\":8,\"format\":\"png\"}",
                       &r) == TRIBILL_OK);
    size_t n = 0;
    const unsigned char* png = tribill_result_bytes(r, &n);
    CHECK(n > 8 && png[1] == 'P' && png[2] == 'N' && png[3] == 'G');
    CHECK(strcmp(tribill_result_content_type(r), "image/png") == 0);
    tribill_result_free(r);

    tribill_unfolding* u = NULL;
    CHECK(tribill_unfolding_new("2323132313123232313131", 0.5235987755982988, 0.5235987755982988, &u) == TRIBILL_OK);
    CHECK(tribill_unfolding_vertex_count(u) > 0);
    double hx = 0, hy = 0, sep = 0;
    int member = 0;
    CHECK(tribill_unfolding_holonomy(u, &hx, &hy) == TRIBILL_OK);
    CHECK(tribill_unfolding_membership(u, &member, &sep) == TRIBILL_OK && member == 1 && sep > 1e-3);
    CHECK(tribill_unfolding_vertex(u, tribill_unfolding_vertex_count(u), &hx, &hy) == TRIBILL_INVALID_ARGUMENT);
    tribill_unfolding_free(u);

    CHECK(tribill_unfolding_new("123", 1.0, 1.0, &u) == TRIBILL_INVALID_ARGUMENT);
    CHECK(strstr(tribill_operations(), "\"homology\"") != NULL);
    printf("capi ok\n");
    return 0;
}
