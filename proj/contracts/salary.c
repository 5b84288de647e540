#include <stdbool.h>

#ifndef N
#define N 4
#endif

#ifndef AVG
#define AVG 32500
#endif

struct in_T { unsigned int s[N]; };
struct out_T { unsigned int above; };

void contract(struct in_T *in, struct out_T *out)
{
    unsigned int sum = in->s[0];
    for (int i = 1; i < N; i++) {
        sum += in->s[i];
    }
    out->above = sum > AVG * N;
}
