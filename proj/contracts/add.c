struct in_T { unsigned int i1; unsigned int i2; };
struct out_T { unsigned int o; };

void contract(struct in_T *in, struct out_T *out)
{
    unsigned int val = in->i1 + in->i2;
    out->o = val;
}
