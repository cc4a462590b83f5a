/* util.c -- utility functions for gzip support */

#include <config.h>
#include <stdio.h>
#include <unistd.h>
#include "gzip.h"

static unsigned char inbuf[INBUFSIZ];
static unsigned insize;
static unsigned inptr;
static int ifd_in;

/* Fill the input buffer.  Called only when the buffer is empty. */
int
fill_inbuf (int eof_ok)
{
  int len;

  insize = 0;
  do
    {
      len = read (ifd_in, (char *) inbuf + insize, INBUFSIZ - insize);
      if (len <= 0)
        break;
      insize += len;
    }
  while (insize < INBUFSIZ);

  if (insize == 0)
    {
      if (eof_ok)
        return EOF;
      read_error ();
    }
  inptr = 1;
  return inbuf[0];
}

/* Write COUNT bytes of BUF to FD, retrying on short writes. */
void
write_buf (int fd, char *buf, unsigned count)
{
  unsigned n;

  while ((n = write (fd, buf, count)) != count)
    {
      if (n == (unsigned) -1)
        write_error ();
      count -= n;
      buf += n;
    }
}

void
progerror (char const *string)
{
  fprintf (stderr, "%s: %s\n", progname, string);
  exit_code = ERROR;
}
