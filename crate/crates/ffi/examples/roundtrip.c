/* Encode, erase two rows' worth of cells, decode. Exits 0 on success. */
#include <stdio.h>
#include <string.h>

#include "gc_erasure.h"

int main(void) {
    const uintptr_t u[] = {1, 2, 2, 4};
    GcCode *code = NULL;
    GcStatus st = gc_code_new(5, 3, 0xB, u, 4, &code);
    if (st != GC_STATUS_OK) {
        fprintf(stderr, "gc_code_new: %s\n", gc_status_message(st));
        return 1;
    }
    /* a^5 | a^6 0 a^3 | a^6 a^5 a^5 | a^4 0 a a^5 */
    const uint16_t data[] = {7, 5, 0, 3, 5, 7, 7, 6, 0, 2, 7};
    const uint16_t expect[] = {7, 3, 1, 5, 0, 5, 0, 3, 1, 7, 5, 7, 7, 4, 1, 6, 0, 2, 7, 3};
    uint16_t word[20];
    st = gc_encode(code, data, gc_code_data_count(code), NULL, word, 20);
    if (st != GC_STATUS_OK || memcmp(word, expect, sizeof word) != 0) {
        fprintf(stderr, "encode mismatch\n");
        return 1;
    }
    uint8_t mask[20] = {0};
    const int erased[] = {0, 3, 6, 7, 8, 9, 11, 13, 18};
    for (int i = 0; i < 9; i++) {
        mask[erased[i]] = 1;
        word[erased[i]] = 0;
    }
    st = gc_decode(code, word, mask, 20, true);
    if (st != GC_STATUS_OK || memcmp(word, expect, sizeof word) != 0) {
        fprintf(stderr, "decode: %s\n", gc_status_message(st));
        return 1;
    }
    mask[5] = 1;
    st = gc_decode(code, word, mask, 20, true);
    if (st != GC_STATUS_UNCORRECTABLE) {
        return 1;
    }
    gc_code_free(code);
    puts("ok");
    return 0;
}
