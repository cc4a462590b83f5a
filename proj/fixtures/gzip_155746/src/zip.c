/* zip.c -- compress files to the gzip or pkzip format */

#include <config.h>
#include <stdio.h>
#include "gzip.h"

static unsigned long crc;
static long header_bytes;

/* Deflate IN to OUT, writing the gzip header first. */
int
zip (int in, int out)
{
  unsigned char flags = 0;
  unsigned long stamp = 0;

  put_byte (0x1f);
  put_byte (0x8b);
  put_byte (8);
  put_byte (flags);
  put_long (stamp);
  header_bytes = 10L;

  crc = updcrc (0, 0);
  deflate ();
  put_long (crc);
  flush_outbuf ();
  return OK;
}
